#include "qre/qpe_performance_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

namespace {

// Budgets are assembled from fractions in floating point; 0.008 + 0.001 +
// 0.001 may land one ulp above 0.01.
constexpr double kRoundingSlack = 1e-12;

bool is_probability(double p) { return std::isfinite(p) && p > 0.0 && p < 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

double projection_failure(double gamma, std::int64_t shots) {
  return std::pow(1.0 - gamma * gamma, static_cast<double>(shots));
}

double leakage_bound(double lambda, std::int64_t iterations, double eps_sl) {
  const double r = std::numbers::pi * lambda / (2.0 * static_cast<double>(iterations) * eps_sl);
  return r * r;
}

}  // namespace

void ErrorBudget::validate() const {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(is_probability(delta_bar), "delta_bar must lie in (0, 1)");
  require(is_probability(p_qpe) && is_probability(p_gs) && is_probability(p_hw),
          "failure budgets p_qpe, p_gs, p_hw must lie in (0, 1)");
  for (double e : {eps_sl, eps_ang, eps_coef, eps_trunc})
    require(std::isfinite(e) && e > 0.0, "error budgets must be positive");
  require(p_qpe + p_gs + p_hw <= delta_bar * (1.0 + kRoundingSlack),
          "failure budgets sum to " + text::shortest(p_qpe + p_gs + p_hw) +
              ", exceeding delta_bar = " + text::shortest(delta_bar));
  require(eps_sl + eps_ang + eps_coef + eps_trunc <= epsilon * (1.0 + kRoundingSlack),
          "error budgets sum to " + text::shortest(eps_sl + eps_ang + eps_coef + eps_trunc) +
              ", exceeding epsilon = " + text::shortest(epsilon));
}

ErrorBudget split_budget(double epsilon, double delta_bar, const BudgetFractions& f) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(is_probability(delta_bar), "delta_bar must lie in (0, 1)");
  ErrorBudget b;
  b.epsilon = epsilon;
  b.delta_bar = delta_bar;
  b.p_qpe = f.p_qpe * delta_bar;
  b.p_gs = f.p_gs * delta_bar;
  b.p_hw = f.p_hw * delta_bar;
  b.eps_sl = f.eps_sl * epsilon;
  b.eps_ang = f.eps_ang * epsilon;
  b.eps_coef = f.eps_coef * epsilon;
  b.eps_trunc = f.eps_trunc * epsilon;
  b.validate();
  return b;
}

std::int64_t compute_shots(double gamma, double p_gs) {
  require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(is_probability(p_gs), "p_gs must lie in (0, 1)");
  if (gamma == 0.0)
    throw InfeasibilityError("overlap gamma = 0: projection onto the ground state never succeeds");
  const double q = 1.0 - gamma * gamma;
  if (q <= 0.0) return 1;

  const double ratio = std::log(p_gs) / std::log1p(-gamma * gamma);
  if (!(ratio < 9.0e18)) throw InfeasibilityError("shot count overflows for gamma = " +
                                                  text::shortest(gamma));
  auto shots = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ratio)));
  // Settle the ceiling against the inequality itself so that M is feasible
  // and M - 1 is not, as evaluated in floating point.
  while (projection_failure(gamma, shots) > p_gs) ++shots;
  while (shots > 1 && projection_failure(gamma, shots - 1) <= p_gs) --shots;
  return shots;
}

double compute_shot_hw_tolerance(std::int64_t shots, double p_hw) {
  require(shots >= 1, "shots must be >= 1");
  require(is_probability(p_hw), "p_hw must lie in (0, 1)");
  return -std::expm1(std::log1p(-p_hw) / static_cast<double>(shots));
}

int compute_coeff_bits(double lambda, double eps_coef) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
  require(std::isfinite(eps_coef) && eps_coef > 0.0, "eps_coef must be positive");
  return static_cast<int>(std::ceil(2.5 + std::log2(lambda / eps_coef)));
}

int compute_angle_bits(double lambda, int n_spin_orbitals, double eps_ang) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
  require(n_spin_orbitals > 0, "n_spin_orbitals must be positive");
  require(std::isfinite(eps_ang) && eps_ang > 0.0, "eps_ang must be positive");
  return static_cast<int>(
      std::ceil(5.625 + std::log2(lambda * static_cast<double>(n_spin_orbitals) / eps_ang)));
}

double select_truncation_threshold(std::span<const TruncationPoint> curve, double eps_trunc) {
  require(std::isfinite(eps_trunc) && eps_trunc >= 0.0, "eps_trunc must be non-negative");
  auto zero = std::find_if(curve.begin(), curve.end(),
                           [](const TruncationPoint& p) { return p.threshold == 0.0; });
  require(zero != curve.end(), "truncation curve has no threshold-0 point");
  const double e0 = zero->energy;
  double best = 0.0;
  for (const auto& p : curve)
    if (std::abs(p.energy - e0) <= eps_trunc && p.threshold > best) best = p.threshold;
  return best;
}

double per_shot_leakage_allowance(std::int64_t shots, double p_qpe) {
  require(shots >= 1, "shots must be >= 1");
  require(is_probability(p_qpe), "p_qpe must lie in (0, 1)");
  return -std::expm1(std::log1p(-p_qpe) / static_cast<double>(shots));
}

std::int64_t compute_iterations(double lambda, std::int64_t shots, double p_qpe, double eps_sl) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
  require(std::isfinite(eps_sl) && eps_sl > 0.0, "eps_sl must be positive");
  const double allowance = per_shot_leakage_allowance(shots, p_qpe);
  const double raw = std::numbers::pi * lambda / (2.0 * std::sqrt(allowance) * eps_sl);
  if (!(raw < 9.0e18)) throw InfeasibilityError("iteration count overflows");
  auto iterations = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
  while (leakage_bound(lambda, iterations, eps_sl) > allowance) ++iterations;
  while (iterations > 1 && leakage_bound(lambda, iterations - 1, eps_sl) <= allowance)
    --iterations;
  return iterations;
}

FailureBreakdown failure_breakdown(double gamma, double lambda, const ErrorBudget& budget,
                                   const AlgorithmParameters& params) {
  const auto m = static_cast<double>(params.shots);
  FailureBreakdown f;
  f.delta_hw = -std::expm1(m * std::log1p(-params.shot_hw_tolerance));
  f.delta_gs = projection_failure(gamma, params.shots);
  const double per_shot = std::min(1.0, leakage_bound(lambda, params.iterations, budget.eps_sl));
  f.delta_qpe = -std::expm1(m * std::log1p(-per_shot));
  return f;
}

AlgorithmParameters assign_parameters(const HamiltonianInstance& instance,
                                      const ErrorBudget& budget, NormVariant variant) {
  budget.validate();
  const double lambda = instance.lambda(variant);

  AlgorithmParameters p;
  p.shots = compute_shots(instance.overlap_gamma, budget.p_gs);
  p.shot_hw_tolerance = compute_shot_hw_tolerance(p.shots, budget.p_hw);
  p.coeff_bits = compute_coeff_bits(lambda, budget.eps_coef);
  p.angle_bits = compute_angle_bits(lambda, instance.n_spin_orbitals(), budget.eps_ang);
  p.truncation_threshold =
      instance.truncation_curve.empty()
          ? 0.0
          : select_truncation_threshold(instance.truncation_curve, budget.eps_trunc);
  p.iterations = compute_iterations(lambda, p.shots, budget.p_qpe, budget.eps_sl);

  const auto f = failure_breakdown(instance.overlap_gamma, lambda, budget, p);
  if (f.total() > budget.delta_bar * (1.0 + kRoundingSlack))
    throw InfeasibilityError("instance " + instance.key().str() +
                             ": assembled failure probability " + text::shortest(f.total()) +
                             " exceeds delta_bar");
  return p;
}

double total_rate_from_barrier(double delta_g_kcal_per_mol, double temperature_kelvin) {
  require(std::isfinite(temperature_kelvin) && temperature_kelvin > 0.0,
          "temperature must be positive");
  constexpr double boltzmann = 1.380649e-23;      // J/K
  constexpr double planck = 6.62607015e-34;       // J s
  constexpr double gas_constant = 8.314462618;    // J/(mol K)
  constexpr double joule_per_kcal = 4184.0;
  const double rt = gas_constant / joule_per_kcal * temperature_kelvin;
  return boltzmann * temperature_kelvin / planck * std::exp(-delta_g_kcal_per_mol / rt);
}

}  // namespace qre
