// qre: command-line front end for the resource estimation pipeline.
//
// Exit codes: 0 success, 1 validation error, 2 infeasible, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qre/dmrg_extrapolation.hpp"
#include "qre/errors.hpp"
#include "qre/instance_catalog.hpp"
#include "qre/logical_estimator.hpp"
#include "qre/physical_estimator.hpp"
#include "qre/text_format.hpp"
#include "qre/utility_report.hpp"

namespace fs = std::filesystem;

namespace {

enum class Format { csv, table };

struct Common {
  std::string out_dir;
  std::string format = "table";

  Format fmt() const { return format == "csv" ? Format::csv : Format::table; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_dir, "Write output files into this directory");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "table"}));
}

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// Writes `content` to DIR/name when --out is given, else to stdout.
void emit(const Common& c, const std::string& name, const std::string& content) {
  if (c.out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw qre::IoError("cannot create " + c.out_dir + ": " + ec.message());
  const auto path = fs::path(c.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qre::IoError("cannot write " + path.string());
  out << content;
  if (!out) throw qre::IoError("write failed for " + path.string());
}

std::string ext(const Common& c) { return c.fmt() == Format::csv ? ".csv" : ".txt"; }

std::vector<qre::HamiltonianInstance> load_checked(const std::string& path) {
  auto catalog = qre::load_catalog(path);
  warn(qre::catalog_warnings(catalog));
  return catalog;
}

std::vector<qre::PhysicalResourceEstimate> physical_rows(
    const std::vector<qre::LogicalResourceEstimate>& logical, const qre::ArchitectureConfig& cfg) {
  std::vector<qre::PhysicalResourceEstimate> rows;
  for (const auto& l : logical)
    rows.push_back(qre::search_configuration(l, cfg.architecture, cfg.factories));
  return rows;
}

const qre::HamiltonianInstance& pick_instance(const std::vector<qre::HamiltonianInstance>& catalog,
                                              const std::string& key) {
  if (catalog.empty()) throw qre::ValidationError("catalog is empty");
  if (key.empty()) return catalog.front();
  for (const auto& h : catalog)
    if (h.key().str() == key || h.molecule_id == key) return h;
  throw qre::ValidationError("no instance matches '" + key + "'");
}

std::string sweep_csv(const std::vector<qre::SweepPoint>& sweep) {
  std::ostringstream os;
  os << "delta_bar,runtime_hours,N_phys,distance,factory\n";
  for (const auto& s : sweep)
    os << qre::text::shortest(s.delta_bar) << ',' << qre::text::shortest(s.runtime_hours) << ','
       << s.estimate.physical_qubits << ',' << s.estimate.code_distance << ','
       << qre::text::csv_field(s.estimate.factory) << '\n';
  return os.str();
}

std::string sweep_table(const std::vector<qre::SweepPoint>& sweep) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& s : sweep)
    cells.push_back({qre::text::shortest(s.delta_bar), qre::text::scientific(s.runtime_hours, 3),
                     qre::text::scientific(static_cast<double>(s.estimate.physical_qubits), 3),
                     std::to_string(s.estimate.code_distance), s.estimate.factory});
  return qre::text::aligned_table({"delta_bar", "T_hr", "N_phys", "d", "factory"}, cells);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum resource estimation for ground-state energy problems"};
  app.require_subcommand(1);

  Common common;
  double epsilon = qre::kReferenceEpsilon;
  double delta_bar = qre::kReferenceDeltaBar;
  bool lpbliss = false;
  std::string catalog_path, arch_path = QRE_DEFAULT_ARCH, series_path, dmrg_path;
  std::vector<double> sweep;
  std::string sweep_instance;
  std::vector<std::int64_t> cpus;
  double dmrg_delta = 1e-3;
  std::string series_id;
  int series_orbitals = 0;

  auto* catalog_cmd = app.add_subcommand("catalog", "Instance catalog tools");
  catalog_cmd->require_subcommand(1);
  auto* validate_cmd = catalog_cmd->add_subcommand("validate", "Validate a catalog file");
  validate_cmd->add_option("file", catalog_path, "Catalog file")->required();

  auto* estimate_cmd = app.add_subcommand("estimate", "Resource estimates");
  estimate_cmd->require_subcommand(1);
  auto* logical_cmd = estimate_cmd->add_subcommand("logical", "Logical resource estimates");
  auto* physical_cmd = estimate_cmd->add_subcommand("physical", "Physical resource estimates");
  for (auto* cmd : {logical_cmd, physical_cmd}) {
    cmd->add_option("catalog", catalog_path, "Catalog file")->required();
    cmd->add_option("--epsilon", epsilon, "Target energy error (Hartree)")->capture_default_str();
    cmd->add_option("--delta", delta_bar, "Total failure probability")->capture_default_str();
    cmd->add_flag("--lpbliss", lpbliss, "Use LPBLISS-treated norms and anchors");
    add_common(cmd, common);
  }
  physical_cmd->add_option("--arch", arch_path, "Architecture config")->capture_default_str();
  physical_cmd->add_option("--sweep", sweep, "Failure budgets for a runtime sweep")
      ->delimiter(',');
  physical_cmd->add_option("--sweep-instance", sweep_instance,
                           "Instance for --sweep, as id or id/N_o (default: first)");

  auto* dmrg_cmd = app.add_subcommand("dmrg", "DMRG series tools");
  dmrg_cmd->require_subcommand(1);
  auto* extrapolate_cmd = dmrg_cmd->add_subcommand("extrapolate", "Fit a DMRG series");
  extrapolate_cmd->add_option("series", series_path, "Series CSV")->required();
  extrapolate_cmd->add_option("--delta", dmrg_delta, "Target accuracy (Hartree)")
      ->capture_default_str();
  extrapolate_cmd->add_option("--id", series_id, "Molecule id for the summary row");
  extrapolate_cmd->add_option("--n-orbitals", series_orbitals, "N_o for the summary row");
  add_common(extrapolate_cmd, common);

  auto* utility_cmd = app.add_subcommand("utility", "Cost comparison");
  utility_cmd->require_subcommand(1);
  auto* report_cmd = utility_cmd->add_subcommand("report", "Emit the full report");
  report_cmd->add_option("catalog", catalog_path, "Catalog file")->required();
  report_cmd->add_option("--cpus", cpus, "Classical parallelization grid")->delimiter(',');
  report_cmd->add_option("--dmrg", dmrg_path, "DMRG summary CSV");
  report_cmd->add_option("--arch", arch_path, "Architecture config")->capture_default_str();
  report_cmd->add_option("--epsilon", epsilon, "Target energy error (Hartree)")
      ->capture_default_str();
  report_cmd->add_option("--delta", delta_bar, "Total failure probability")->capture_default_str();
  report_cmd->add_option("--sweep", sweep, "Failure budgets for the runtime sweep")
      ->delimiter(',');
  report_cmd->add_option("--sweep-instance", sweep_instance, "Instance for the sweep");
  add_common(report_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto variant = lpbliss ? qre::NormVariant::lpbliss : qre::NormVariant::original;

    if (validate_cmd->parsed()) {
      const auto catalog = load_checked(catalog_path);
      std::cout << catalog_path << ": " << catalog.size() << " instance(s) valid\n";
      return 0;
    }

    if (logical_cmd->parsed() || physical_cmd->parsed()) {
      const auto catalog = load_checked(catalog_path);
      const auto budget = qre::split_budget(epsilon, delta_bar);
      const auto logical = qre::estimate_catalog(catalog, budget, variant);
      warn(logical.warnings);

      if (logical_cmd->parsed()) {
        std::ostringstream os;
        if (common.fmt() == Format::csv)
          qre::write_logical_csv(os, logical.rows);
        else
          qre::write_logical_table(os, logical.rows);
        emit(common, "logical" + ext(common), os.str());
        return 0;
      }

      const auto cfg = qre::load_architecture_config(arch_path);
      const auto physical = physical_rows(logical.rows, cfg);
      std::ostringstream os;
      if (common.fmt() == Format::csv)
        qre::write_physical_csv(os, physical);
      else
        qre::write_physical_table(os, physical);
      emit(common, "physical" + ext(common), os.str());

      if (!sweep.empty()) {
        const auto& inst = pick_instance(catalog, sweep_instance);
        const auto points = qre::runtime_vs_failure_sweep(inst, sweep, epsilon, cfg.architecture,
                                                          cfg.factories, logical.model, variant);
        const auto text = common.fmt() == Format::csv ? sweep_csv(points) : sweep_table(points);
        if (common.out_dir.empty()) std::cout << "\nSweep for " << inst.key().str() << "\n\n";
        emit(common, "sweep" + ext(common), text);
      }
      return 0;
    }

    if (extrapolate_cmd->parsed()) {
      const auto points = qre::load_dmrg_series(series_path);
      const auto energy = qre::fit_energy_extrapolation(points);
      const auto bond = qre::fit_bond_dimension(points, energy.e_est, dmrg_delta);
      warn(bond.warnings);
      if (series_id.empty()) series_id = fs::path(series_path).stem().string();
      const auto row = qre::summarize_series(series_id, series_orbitals, points, dmrg_delta);

      std::ostringstream os;
      if (common.fmt() == Format::csv) {
        qre::write_dmrg_summary_csv(os, {row});
      } else {
        using qre::text::shortest;
        os << "points:        " << points.size() << '\n'
           << "E_est:         " << qre::text::fixed(energy.e_est, 6) << " +- "
           << qre::text::scientific(energy.e_est_ci95, 2) << " Eh (95%)\n"
           << "slope:         " << shortest(energy.slope) << '\n'
           << "a, sigma_a:    " << shortest(bond.a) << ", " << shortest(bond.sigma_a) << '\n'
           << "b, sigma_b:    " << shortest(bond.b) << ", " << shortest(bond.sigma_b) << '\n'
           << "D_est:         " << qre::text::fixed(bond.d_est, 1) << " ["
           << qre::text::fixed(bond.d_min, 1) << ", " << qre::text::fixed(bond.d_max, 1)
           << "] at delta = " << shortest(dmrg_delta) << " Eh\n";
        if (auto f = row.forecast_cpu_hours())
          os << "CPU forecast:  " << qre::text::fixed(*f, 1) << " h\n";
      }
      emit(common, "dmrg" + ext(common), os.str());
      return 0;
    }

    if (report_cmd->parsed()) {
      qre::ReportInputs in;
      in.catalog = load_checked(catalog_path);
      const auto budget = qre::split_budget(epsilon, delta_bar);
      const auto logical = qre::estimate_catalog(in.catalog, budget, qre::NormVariant::original);
      const auto treated = qre::estimate_catalog(in.catalog, budget, qre::NormVariant::lpbliss);
      warn(logical.warnings);
      in.logical = logical.rows;
      in.logical_lpbliss = treated.rows;

      const auto cfg = qre::load_architecture_config(arch_path);
      in.physical = physical_rows(in.logical, cfg);
      if (sweep.empty()) sweep = {0.01, 0.02, 0.05, 0.1, 0.2, 0.33};
      if (!in.catalog.empty()) {
        const auto& inst = pick_instance(in.catalog, sweep_instance);
        in.sweep_instance = inst.key().str();
        in.sweep = qre::runtime_vs_failure_sweep(inst, sweep, epsilon, cfg.architecture,
                                                 cfg.factories, logical.model);
      }
      if (!dmrg_path.empty()) in.dmrg = qre::load_dmrg_summary(dmrg_path);
      if (!cpus.empty()) in.cpus = cpus;

      const auto doc = qre::emit_report(in);
      for (const auto& n : doc.notices) std::cerr << "notice: " << n << '\n';
      if (common.out_dir.empty())
        std::cout << doc.find("report.txt")->content;
      else
        qre::write_report(doc, common.out_dir);
      return 0;
    }
  } catch (const qre::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const qre::InfeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const qre::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
