#include "qre/logical_estimator.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

BlockEncodingCostModel BlockEncodingCostModel::user_supplied(CostFunction per_iteration_toffoli,
                                                             CostFunction logical_qubits) {
  if (!per_iteration_toffoli || !logical_qubits)
    throw ValidationError("user-supplied cost model needs both cost functions");
  BlockEncodingCostModel m;
  m.kind_ = CostModelKind::user_supplied;
  m.per_iteration_ = std::move(per_iteration_toffoli);
  m.qubits_ = std::move(logical_qubits);
  return m;
}

BlockEncodingCostModel BlockEncodingCostModel::calibrated(
    std::map<InstanceKey, CalibrationEntry> table, std::vector<std::string> warnings) {
  for (const auto& [key, e] : table)
    if (e.per_iteration_toffoli < 1 || e.logical_qubits < 1)
      throw ValidationError("calibration entry " + key.str() + " has non-positive cost");
  BlockEncodingCostModel m;
  m.kind_ = CostModelKind::calibrated_table;
  m.table_ = std::move(table);
  m.warnings_ = std::move(warnings);
  return m;
}

bool BlockEncodingCostModel::covers(const InstanceKey& key) const {
  return kind_ == CostModelKind::user_supplied || table_.count(key) > 0;
}

const CalibrationEntry& BlockEncodingCostModel::entry(const InstanceKey& key) const {
  auto it = table_.find(key);
  if (it == table_.end())
    throw ValidationError("cost model has no calibration for instance " + key.str());
  return it->second;
}

std::int64_t BlockEncodingCostModel::per_iteration_toffoli(
    const HamiltonianInstance& instance, const AlgorithmParameters& params) const {
  if (kind_ == CostModelKind::calibrated_table)
    return entry(instance.key()).per_iteration_toffoli;
  const auto v = per_iteration_(instance, params);
  if (v < 1) throw ValidationError("cost model returned per-iteration Toffoli count < 1");
  return v;
}

std::int64_t BlockEncodingCostModel::logical_qubits(const HamiltonianInstance& instance,
                                                    const AlgorithmParameters& params) const {
  if (kind_ == CostModelKind::calibrated_table) return entry(instance.key()).logical_qubits;
  const auto v = qubits_(instance, params);
  if (v < 1) throw ValidationError("cost model returned logical qubit count < 1");
  return v;
}

BlockEncodingCostModel calibrate_cost_model(const std::vector<HamiltonianInstance>& instances,
                                            const ErrorBudget& budget, NormVariant variant) {
  std::map<InstanceKey, CalibrationEntry> table;
  std::vector<std::string> warnings;
  for (const auto& inst : instances) {
    const auto& anchor = inst.anchor(variant);
    if (!anchor)
      throw ValidationError("instance " + inst.key().str() + " has no " +
                            std::string(to_string(variant)) + " reference_logical anchor");
    const auto params = assign_parameters(inst, budget, variant);

    CalibrationEntry e;
    e.iterations = params.iterations;
    e.per_iteration_toffoli = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(anchor->toffoli_count) /
                        static_cast<double>(params.iterations)));
    e.logical_qubits = anchor->logical_qubits;
    const double rebuilt = static_cast<double>(e.per_iteration_toffoli) *
                           static_cast<double>(params.iterations);
    e.relative_residual = std::abs(rebuilt - static_cast<double>(anchor->toffoli_count)) /
                          static_cast<double>(anchor->toffoli_count);
    if (e.relative_residual > kCalibrationTolerance)
      warnings.push_back("calibration residual " + text::scientific(e.relative_residual) +
                         " for " + inst.key().str() + " exceeds " +
                         text::scientific(kCalibrationTolerance, 1));
    table.emplace(inst.key(), e);
  }
  return BlockEncodingCostModel::calibrated(std::move(table), std::move(warnings));
}

LogicalResourceEstimate estimate_logical(const HamiltonianInstance& instance,
                                         const ErrorBudget& budget,
                                         const BlockEncodingCostModel& model,
                                         NormVariant variant) {
  if (!model.covers(instance.key()))
    throw ValidationError("cost model has no calibration for instance " + instance.key().str());
  const auto params = assign_parameters(instance, budget, variant);

  LogicalResourceEstimate est;
  est.molecule_id = instance.molecule_id;
  est.n_orbitals = instance.n_orbitals;
  est.overlap_gamma = instance.overlap_gamma;
  est.variant = variant;
  est.parameters = params;
  est.shots = params.shots;
  est.shot_hw_tolerance = params.shot_hw_tolerance;
  est.logical_qubits = model.logical_qubits(instance, params);
  const auto per_iteration = model.per_iteration_toffoli(instance, params);
  if (params.iterations > std::numeric_limits<std::int64_t>::max() / per_iteration)
    throw InfeasibilityError("Toffoli count overflows for " + instance.key().str());
  est.toffoli_per_shot = params.iterations * per_iteration;
  return est;
}

CatalogEstimate estimate_catalog(const std::vector<HamiltonianInstance>& instances,
                                 const ErrorBudget& budget, NormVariant variant) {
  std::vector<HamiltonianInstance> anchored;
  std::vector<std::string> warnings;
  for (const auto& inst : instances) {
    if (inst.anchor(variant))
      anchored.push_back(inst);
    else
      warnings.push_back("instance " + inst.key().str() + " has no " +
                         std::string(to_string(variant)) + " anchor and is skipped");
  }
  CatalogEstimate out{calibrate_cost_model(anchored,
                                           split_budget(kReferenceEpsilon, kReferenceDeltaBar),
                                           variant),
                      {}, std::move(warnings)};
  for (const auto& w : out.model.warnings()) out.warnings.push_back(w);
  for (const auto& inst : anchored)
    out.rows.push_back(estimate_logical(inst, budget, out.model, variant));
  return out;
}

LpblissReduction compare_lpbliss(const LogicalResourceEstimate& original,
                                 const LogicalResourceEstimate& treated) {
  if (original.key() != treated.key())
    throw ValidationError("cannot compare estimates for different instances: " +
                          original.key().str() + " vs " + treated.key().str());
  LpblissReduction r;
  r.key = original.key();
  r.toffoli_ratio = static_cast<double>(original.toffoli_per_shot) /
                    static_cast<double>(treated.toffoli_per_shot);
  r.qubit_ratio = static_cast<double>(original.logical_qubits) /
                  static_cast<double>(treated.logical_qubits);
  r.shots_equal = original.shots == treated.shots;
  return r;
}

void write_logical_csv(std::ostream& os, const std::vector<LogicalResourceEstimate>& rows) {
  os << "molecule_id,N_o,M,delta_hw,N_Toffoli,N_q,gamma\n";
  for (const auto& r : rows)
    os << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ',' << r.shots << ','
       << text::shortest(r.shot_hw_tolerance) << ',' << r.toffoli_per_shot << ','
       << r.logical_qubits << ',' << text::shortest(r.overlap_gamma) << '\n';
}

void write_logical_table(std::ostream& os, const std::vector<LogicalResourceEstimate>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({r.molecule_id, std::to_string(r.n_orbitals), std::to_string(r.shots),
                     text::scientific(r.shot_hw_tolerance, 3),
                     text::scientific(static_cast<double>(r.toffoli_per_shot), 2),
                     std::to_string(r.logical_qubits), text::fixed(r.overlap_gamma, 2)});
  os << text::aligned_table({"Molecule ID", "N_o", "M", "delta'_HW", "N_Toffoli", "N_q", "|gamma|"},
                            cells);
}

}  // namespace qre
