#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qre/dmrg_extrapolation.hpp"
#include "qre/instance_catalog.hpp"
#include "qre/logical_estimator.hpp"
#include "qre/physical_estimator.hpp"

namespace qre {

struct CostModel {
  double cpu_hour_rate_usd = 0.04;
  double utility_min_usd = 1e5;  // value of one reaction study
  double utility_max_usd = 2e5;

  void validate() const;
};

/// cpu_hours * rate.
double classical_cost(double cpu_hours, const CostModel& model = {});

/// 100 * (c / P) / (c / P + q) with c classical CPU-hours spread perfectly
/// over P = `parallel_cpus` and q quantum hours. Falls toward 0 as classical
/// parallelization grows. This definition is our own; reports label it as
/// such.
double quantum_share(double quantum_hours, double classical_cpu_hours,
                     std::int64_t parallel_cpus);

struct ShareSplit {
  double quantum_percent = 0.0;
  double classical_percent = 0.0;  // 100 - quantum_percent
};

ShareSplit share_split(double quantum_hours, double classical_cpu_hours,
                       std::int64_t parallel_cpus);

struct ComparisonRow {
  std::string molecule_id;
  int n_orbitals = 0;
  double classical_cpu_hours = 0.0;
  double classical_cost_usd = 0.0;
  double quantum_runtime_hours = 0.0;
  std::int64_t parallel_cpus = 1;
  double quantum_share_percent = 0.0;
};

/// Joins physical estimates with DMRG forecasts by (molecule_id, N_o) and
/// expands each match over `cpus`. Instances present on one side only are
/// skipped.
std::vector<ComparisonRow> build_comparison(const std::vector<PhysicalResourceEstimate>& physical,
                                            const std::vector<DmrgSummaryRow>& dmrg,
                                            const std::vector<std::int64_t>& cpus,
                                            const CostModel& model = {});

/// Default parallelization grid, powers of two from 1 to 512.
std::vector<std::int64_t> default_cpu_grid();

/// Everything a report may contain; empty vectors mean "section not
/// computed".
struct ReportInputs {
  std::vector<HamiltonianInstance> catalog;
  std::vector<LogicalResourceEstimate> logical;
  std::vector<LogicalResourceEstimate> logical_lpbliss;
  std::vector<PhysicalResourceEstimate> physical;
  std::vector<SweepPoint> sweep;
  std::string sweep_instance;  // label for the sweep series
  std::vector<DmrgSummaryRow> dmrg;
  std::vector<std::int64_t> cpus = default_cpu_grid();
  CostModel cost;
  int high_utility_min_orbitals = 51;  // "more than 50 orbitals"
};

struct ReportFile {
  std::string name;
  std::string content;
};

struct ReportDocument {
  std::vector<ReportFile> files;  // fixed order; report.txt last
  std::vector<std::string> notices;

  const ReportFile* find(const std::string& name) const;
};

/// Assembles CSV tables, plot series and a text summary. Output depends only
/// on the inputs. Throws ValidationError if every section is empty.
ReportDocument emit_report(const ReportInputs& inputs);

/// Writes each file under `dir`, creating it if needed. Throws IoError.
void write_report(const ReportDocument& doc, const std::filesystem::path& dir);

}  // namespace qre
