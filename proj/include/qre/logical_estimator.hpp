#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qre/instance_catalog.hpp"
#include "qre/qpe_performance_model.hpp"

namespace qre {

enum class CostModelKind { calibrated_table, user_supplied };

/// Per-instance costs recovered from a published anchor.
struct CalibrationEntry {
  std::int64_t per_iteration_toffoli = 0;
  std::int64_t logical_qubits = 0;
  std::int64_t iterations = 0;       // iteration count the anchor was divided by
  double relative_residual = 0.0;    // |I * per_iteration - anchor| / anchor
};

/// Cost of one walk-operator iteration of the block encoding. The compilation
/// itself is external; the model is either calibrated from published anchors
/// or supplied by the caller.
class BlockEncodingCostModel {
 public:
  using CostFunction =
      std::function<std::int64_t(const HamiltonianInstance&, const AlgorithmParameters&)>;

  static BlockEncodingCostModel user_supplied(CostFunction per_iteration_toffoli,
                                              CostFunction logical_qubits);
  static BlockEncodingCostModel calibrated(std::map<InstanceKey, CalibrationEntry> table,
                                           std::vector<std::string> warnings = {});

  CostModelKind kind() const { return kind_; }
  bool covers(const InstanceKey& key) const;

  std::int64_t per_iteration_toffoli(const HamiltonianInstance& instance,
                                     const AlgorithmParameters& params) const;
  std::int64_t logical_qubits(const HamiltonianInstance& instance,
                              const AlgorithmParameters& params) const;

  const std::map<InstanceKey, CalibrationEntry>& table() const { return table_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const CalibrationEntry& entry(const InstanceKey& key) const;

  CostModelKind kind_ = CostModelKind::user_supplied;
  CostFunction per_iteration_;
  CostFunction qubits_;
  std::map<InstanceKey, CalibrationEntry> table_;
  std::vector<std::string> warnings_;
};

struct LogicalResourceEstimate {
  std::string molecule_id;
  int n_orbitals = 0;
  double overlap_gamma = 0.0;
  NormVariant variant = NormVariant::original;
  std::int64_t toffoli_per_shot = 0;
  std::int64_t logical_qubits = 0;
  std::int64_t shots = 0;
  double shot_hw_tolerance = 0.0;
  AlgorithmParameters parameters;

  InstanceKey key() const { return {molecule_id, n_orbitals}; }
};

/// Residuals above this relative size are reported as calibration warnings.
inline constexpr double kCalibrationTolerance = 1e-4;

/// Divides each published Toffoli count by the recomputed iteration count.
/// Every instance must carry the anchor for `variant`.
BlockEncodingCostModel calibrate_cost_model(const std::vector<HamiltonianInstance>& instances,
                                            const ErrorBudget& budget,
                                            NormVariant variant = NormVariant::original);

LogicalResourceEstimate estimate_logical(const HamiltonianInstance& instance,
                                         const ErrorBudget& budget,
                                         const BlockEncodingCostModel& model,
                                         NormVariant variant = NormVariant::original);

/// Budget at which published anchors were produced.
inline constexpr double kReferenceEpsilon = 1.6e-3;  // Hartree
inline constexpr double kReferenceDeltaBar = 0.01;

struct CatalogEstimate {
  BlockEncodingCostModel model;
  std::vector<LogicalResourceEstimate> rows;  // catalog order
  std::vector<std::string> warnings;
};

/// Calibrates on every instance carrying the `variant` anchor at the
/// reference budget, then estimates those instances at `budget`. Instances
/// without the anchor are skipped with a warning.
CatalogEstimate estimate_catalog(const std::vector<HamiltonianInstance>& instances,
                                 const ErrorBudget& budget,
                                 NormVariant variant = NormVariant::original);

struct LpblissReduction {
  InstanceKey key;
  double toffoli_ratio = 0.0;  // original / treated
  double qubit_ratio = 0.0;    // original / treated
  bool shots_equal = false;
};

LpblissReduction compare_lpbliss(const LogicalResourceEstimate& original,
                                 const LogicalResourceEstimate& treated);

/// Table columns: molecule_id, N_o, M, delta'_HW, N_Toffoli, N_q, |gamma|.
void write_logical_csv(std::ostream& os, const std::vector<LogicalResourceEstimate>& rows);
void write_logical_table(std::ostream& os, const std::vector<LogicalResourceEstimate>& rows);

}  // namespace qre
