#include "qre/physical_estimator.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

void PhysicalArchitecture::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("architecture: ") + what);
  };
  require(std::isfinite(cycle_time_s) && cycle_time_s > 0.0, "cycle_time_s must be positive");
  require(phys_error_rate > 0.0 && phys_error_rate < 1.0, "phys_error_rate must lie in (0, 1)");
  require(n_factories >= 1, "n_factories must be positive");
  require(t_per_toffoli >= 1, "t_per_toffoli must be positive");
  require(std::isfinite(routing_overhead_factor) && routing_overhead_factor >= 0.0,
          "routing_overhead_factor must be non-negative");
  require(std::isfinite(error_model_prefactor) && error_model_prefactor > 0.0,
          "error_model_prefactor must be positive");
  require(error_model_threshold > 0.0 && error_model_threshold < 1.0,
          "error_model_threshold must lie in (0, 1)");
  require(max_distance >= 3, "max_distance must be at least 3");
}

void FactorySpec::validate() const {
  if (name.empty()) throw ValidationError("factory: name must not be empty");
  if (physical_qubits < 1 || cycles_per_output < 1)
    throw ValidationError("factory " + name + ": qubit and cycle counts must be positive");
  if (!(output_error > 0.0 && output_error < 1.0))
    throw ValidationError("factory " + name + ": output_error must lie in (0, 1)");
}

// ---------------------------------------------------------------------------
// config file

namespace {

[[noreturn]] void config_fail(std::string_view source, const YAML::Node& node,
                              const std::string& what) {
  std::ostringstream os;
  os << source;
  if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
  os << ": " << what;
  throw ValidationError(os.str());
}

void check_keys(std::string_view source, const YAML::Node& node, const std::string& ctx,
                const std::set<std::string>& allowed) {
  if (!node.IsMap()) config_fail(source, node, ctx + " must be a mapping");
  for (const auto& kv : node) {
    auto name = kv.first.as<std::string>();
    if (!allowed.count(name)) config_fail(source, kv.first, ctx + ": unknown field '" + name + "'");
  }
}

double read_real(std::string_view source, const YAML::Node& node, const std::string& name) {
  double v = 0;
  if (!node.IsScalar() || !text::parse_double(node.Scalar(), v))
    config_fail(source, node, "field '" + name + "' must be a real number");
  return v;
}

long long read_int(std::string_view source, const YAML::Node& node, const std::string& name) {
  long long v = 0;
  if (!node.IsScalar() || !text::parse_int(node.Scalar(), v))
    config_fail(source, node, "field '" + name + "' must be an integer");
  return v;
}

}  // namespace

ArchitectureConfig parse_architecture_config(std::string_view text, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string(source) + ":" + std::to_string(e.mark.line + 1) +
                          ": parse error: " + e.msg);
  }
  check_keys(source, root, "architecture config", {"schema_version", "architecture", "factories"});
  if (!root["schema_version"].IsDefined() ||
      read_int(source, root["schema_version"], "schema_version") != 1)
    config_fail(source, root, "architecture config: schema_version 1 is required");

  ArchitectureConfig cfg;
  auto& a = cfg.architecture;
  if (auto node = root["architecture"]; node.IsDefined() && !node.IsNull()) {
    check_keys(source, node, "architecture",
               {"cycle_time_s", "phys_error_rate", "n_factories", "t_per_toffoli",
                "routing_overhead_factor", "error_model_prefactor", "error_model_threshold",
                "max_distance"});
    auto real = [&](const char* name, double& dst) {
      if (node[name].IsDefined()) dst = read_real(source, node[name], name);
    };
    auto integer = [&](const char* name, int& dst) {
      if (node[name].IsDefined()) dst = static_cast<int>(read_int(source, node[name], name));
    };
    real("cycle_time_s", a.cycle_time_s);
    real("phys_error_rate", a.phys_error_rate);
    integer("n_factories", a.n_factories);
    integer("t_per_toffoli", a.t_per_toffoli);
    real("routing_overhead_factor", a.routing_overhead_factor);
    real("error_model_prefactor", a.error_model_prefactor);
    real("error_model_threshold", a.error_model_threshold);
    integer("max_distance", a.max_distance);
  }
  a.validate();

  auto list = root["factories"];
  if (list.IsDefined() && !list.IsNull()) {
    if (!list.IsSequence()) config_fail(source, list, "'factories' must be a list");
    for (const auto& f : list) {
      check_keys(source, f, "factory",
                 {"name", "physical_qubits", "cycles_per_output", "output_error"});
      for (const char* required : {"name", "physical_qubits", "cycles_per_output", "output_error"})
        if (!f[required].IsDefined())
          config_fail(source, f, std::string("factory: missing field '") + required + "'");
      FactorySpec spec;
      spec.name = f["name"].Scalar();
      spec.physical_qubits = read_int(source, f["physical_qubits"], "physical_qubits");
      spec.cycles_per_output = read_int(source, f["cycles_per_output"], "cycles_per_output");
      spec.output_error = read_real(source, f["output_error"], "output_error");
      try {
        spec.validate();
      } catch (const ValidationError& e) {
        config_fail(source, f, e.what());
      }
      cfg.factories.push_back(std::move(spec));
    }
  }
  return cfg;
}

ArchitectureConfig load_architecture_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open architecture config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_architecture_config(buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// cost model

namespace {

void check_distance(int distance) {
  if (distance < 3 || distance % 2 == 0)
    throw ValidationError("code distance must be odd and >= 3, got " + std::to_string(distance));
}

std::int64_t routed_patches(std::int64_t logical_qubits, const PhysicalArchitecture& arch) {
  return static_cast<std::int64_t>(
      std::ceil((1.0 + arch.routing_overhead_factor) * static_cast<double>(logical_qubits)));
}

double shot_cycles(std::int64_t toffoli_per_shot, const PhysicalArchitecture& arch,
                   const FactorySpec& factory) {
  const double t_states = static_cast<double>(toffoli_per_shot) * arch.t_per_toffoli;
  return t_states / arch.n_factories * static_cast<double>(factory.cycles_per_output);
}

}  // namespace

double logical_failure_per_timestep(int distance, const PhysicalArchitecture& arch) {
  check_distance(distance);
  return arch.error_model_prefactor *
         std::pow(arch.phys_error_rate / arch.error_model_threshold, (distance + 1) / 2);
}

std::int64_t layout_footprint(std::int64_t logical_qubits, int distance,
                              const PhysicalArchitecture& arch, const FactorySpec& factory) {
  check_distance(distance);
  if (logical_qubits < 1) throw ValidationError("logical_qubits must be positive");
  const std::int64_t per_patch = 2LL * distance * distance;
  return arch.n_factories * factory.physical_qubits +
         routed_patches(logical_qubits, arch) * per_patch;
}

double shot_runtime(std::int64_t toffoli_per_shot, int distance, const PhysicalArchitecture& arch,
                    const FactorySpec& factory) {
  check_distance(distance);
  if (toffoli_per_shot < 1) throw ValidationError("toffoli_per_shot must be positive");
  return shot_cycles(toffoli_per_shot, arch, factory) * arch.cycle_time_s;
}

double shot_failure_probability(std::int64_t toffoli_per_shot, std::int64_t logical_qubits,
                                int distance, const PhysicalArchitecture& arch,
                                const FactorySpec& factory) {
  const double timesteps = shot_cycles(toffoli_per_shot, arch, factory) / distance;
  const double clifford = timesteps * static_cast<double>(routed_patches(logical_qubits, arch)) *
                          logical_failure_per_timestep(distance, arch);
  const double distillation =
      static_cast<double>(toffoli_per_shot) * arch.t_per_toffoli * factory.output_error;
  return clifford + distillation;
}

PhysicalResourceEstimate search_configuration(const LogicalResourceEstimate& logical,
                                              const PhysicalArchitecture& arch,
                                              std::span<const FactorySpec> factories) {
  arch.validate();
  if (factories.empty()) throw ValidationError("factory catalog is empty");
  if (logical.toffoli_per_shot < 1 || logical.logical_qubits < 1 || logical.shots < 1)
    throw ValidationError("logical estimate for " + logical.key().str() + " is not positive");
  const double budget = logical.shot_hw_tolerance;

  bool found = false;
  bool any_factory_fits = false;
  PhysicalResourceEstimate best;
  for (const auto& factory : factories) {
    factory.validate();
    const double distillation = static_cast<double>(logical.toffoli_per_shot) *
                                arch.t_per_toffoli * factory.output_error;
    any_factory_fits = any_factory_fits || distillation <= budget;

    for (int d = 3; d <= arch.max_distance; d += 2) {
      const double failure = shot_failure_probability(logical.toffoli_per_shot,
                                                      logical.logical_qubits, d, arch, factory);
      if (!(failure <= budget)) continue;
      const auto qubits = layout_footprint(logical.logical_qubits, d, arch, factory);
      const double hours = shot_runtime(logical.toffoli_per_shot, d, arch, factory) *
                           static_cast<double>(logical.shots) / 3600.0;
      const double volume = static_cast<double>(qubits) * hours;

      const bool better =
          !found || volume < best.spacetime_volume ||
          (volume == best.spacetime_volume &&
           (d < best.code_distance || (d == best.code_distance && factory.name < best.factory)));
      if (better) {
        found = true;
        best.physical_qubits = qubits;
        best.runtime_hours = hours;
        best.code_distance = d;
        best.factory = factory.name;
        best.spacetime_volume = volume;
        best.failure_per_shot = failure;
      }
    }
  }
  if (!found) {
    if (!any_factory_fits)
      throw InfeasibilityError("instance " + logical.key().str() +
                               ": factory output error alone exceeds the per-shot tolerance " +
                               text::scientific(budget) + " for every factory");
    throw InfeasibilityError("instance " + logical.key().str() +
                             ": logical error exceeds the per-shot tolerance " +
                             text::scientific(budget) + " at every code distance up to " +
                             std::to_string(arch.max_distance));
  }
  best.molecule_id = logical.molecule_id;
  best.n_orbitals = logical.n_orbitals;
  best.shots = logical.shots;
  return best;
}

std::vector<SweepPoint> runtime_vs_failure_sweep(const HamiltonianInstance& instance,
                                                 std::span<const double> delta_bars,
                                                 double epsilon,
                                                 const PhysicalArchitecture& arch,
                                                 std::span<const FactorySpec> factories,
                                                 const BlockEncodingCostModel& model,
                                                 NormVariant variant,
                                                 const BudgetFractions& fractions) {
  std::vector<SweepPoint> out;
  out.reserve(delta_bars.size());
  for (double delta_bar : delta_bars) {
    const auto budget = split_budget(epsilon, delta_bar, fractions);
    const auto logical = estimate_logical(instance, budget, model, variant);
    auto physical = search_configuration(logical, arch, factories);
    out.push_back({delta_bar, physical.runtime_hours, std::move(physical)});
  }
  return out;
}

void write_physical_csv(std::ostream& os, const std::vector<PhysicalResourceEstimate>& rows) {
  os << "molecule_id,N_o,M,T_hr,N_phys,distance,factory,volume\n";
  for (const auto& r : rows)
    os << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ',' << r.shots << ','
       << text::shortest(r.runtime_hours) << ',' << r.physical_qubits << ',' << r.code_distance
       << ',' << text::csv_field(r.factory) << ',' << text::shortest(r.spacetime_volume) << '\n';
}

void write_physical_table(std::ostream& os, const std::vector<PhysicalResourceEstimate>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({r.molecule_id, std::to_string(r.n_orbitals), std::to_string(r.shots),
                     text::scientific(r.runtime_hours, 3),
                     text::scientific(static_cast<double>(r.physical_qubits), 3),
                     std::to_string(r.code_distance), r.factory,
                     text::scientific(r.spacetime_volume, 3)});
  os << text::aligned_table(
      {"Molecule ID", "N_o", "M", "T_hr", "N_phys", "d", "factory", "volume (qubit-hr)"}, cells);
}

}  // namespace qre
