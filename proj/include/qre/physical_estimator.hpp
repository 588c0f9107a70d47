#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qre/logical_estimator.hpp"

namespace qre {

/// Two-dimensional superconducting surface-code machine.
struct PhysicalArchitecture {
  double cycle_time_s = 1e-7;
  double phys_error_rate = 1e-3;
  int n_factories = 4;
  int t_per_toffoli = 4;
  double routing_overhead_factor = 0.5;  // routing patches per data patch
  double error_model_prefactor = 0.1;
  double error_model_threshold = 1e-2;
  int max_distance = 51;

  void validate() const;
};

/// A magic-state factory at fixed internal distances.
struct FactorySpec {
  std::string name;
  std::int64_t physical_qubits = 0;
  std::int64_t cycles_per_output = 0;  // surface-code cycles per distilled T state
  double output_error = 0.0;           // failure probability per T state

  void validate() const;
};

struct ArchitectureConfig {
  PhysicalArchitecture architecture;
  std::vector<FactorySpec> factories;
};

ArchitectureConfig parse_architecture_config(std::string_view text,
                                             std::string_view source = "<string>");
ArchitectureConfig load_architecture_config(const std::filesystem::path& path);

struct PhysicalResourceEstimate {
  std::string molecule_id;
  int n_orbitals = 0;
  std::int64_t shots = 0;
  std::int64_t physical_qubits = 0;
  double runtime_hours = 0.0;  // all shots, run one after another
  int code_distance = 0;
  std::string factory;
  double spacetime_volume = 0.0;  // physical_qubits * runtime_hours
  double failure_per_shot = 0.0;
};

/// prefactor * (p / threshold)^((d + 1) / 2) per logical patch per logical
/// timestep (d cycles).
double logical_failure_per_timestep(int distance, const PhysicalArchitecture& arch);

/// Factory qubits plus data and routing patches at 2 d^2 physical qubits each.
std::int64_t layout_footprint(std::int64_t logical_qubits, int distance,
                              const PhysicalArchitecture& arch, const FactorySpec& factory);

/// Wall-clock seconds for one shot; T-state production is the bottleneck.
double shot_runtime(std::int64_t toffoli_per_shot, int distance, const PhysicalArchitecture& arch,
                    const FactorySpec& factory);

/// Per-shot failure probability: Clifford volume error plus distillation error.
double shot_failure_probability(std::int64_t toffoli_per_shot, std::int64_t logical_qubits,
                                int distance, const PhysicalArchitecture& arch,
                                const FactorySpec& factory);

/// Exhaustive scan over odd distances in [3, max_distance] and every factory;
/// returns the feasible configuration of least spacetime volume. Ties go to
/// the smaller distance, then to the lexicographically smaller factory name.
PhysicalResourceEstimate search_configuration(const LogicalResourceEstimate& logical,
                                              const PhysicalArchitecture& arch,
                                              std::span<const FactorySpec> factories);

struct SweepPoint {
  double delta_bar = 0.0;
  double runtime_hours = 0.0;
  PhysicalResourceEstimate estimate;
};

/// Runs assign -> logical -> physical for each total failure budget.
std::vector<SweepPoint> runtime_vs_failure_sweep(const HamiltonianInstance& instance,
                                                 std::span<const double> delta_bars,
                                                 double epsilon,
                                                 const PhysicalArchitecture& arch,
                                                 std::span<const FactorySpec> factories,
                                                 const BlockEncodingCostModel& model,
                                                 NormVariant variant = NormVariant::original,
                                                 const BudgetFractions& fractions = {});

/// Columns: molecule_id, N_o, M, T_hr, N_phys, distance, factory, volume.
void write_physical_csv(std::ostream& os, const std::vector<PhysicalResourceEstimate>& rows);
void write_physical_table(std::ostream& os, const std::vector<PhysicalResourceEstimate>& rows);

}  // namespace qre
