#pragma once

#include <cstdint>
#include <span>

#include "qre/instance_catalog.hpp"

namespace qre {

/// Fractions of (delta_bar, epsilon) handed to each failure mechanism and
/// error source. Defaults are the fixed assignment used for the published
/// estimates.
struct BudgetFractions {
  double p_qpe = 0.8;
  double p_gs = 0.1;
  double p_hw = 0.1;
  double eps_sl = 0.8;
  double eps_ang = 0.066;
  double eps_coef = 0.066;
  double eps_trunc = 0.066;
};

/// Split of the total energy error epsilon (Hartree) and total failure
/// probability delta_bar.
struct ErrorBudget {
  double epsilon = 0.0;
  double delta_bar = 0.0;
  double p_qpe = 0.0;
  double p_gs = 0.0;
  double p_hw = 0.0;
  double eps_sl = 0.0;
  double eps_ang = 0.0;
  double eps_coef = 0.0;
  double eps_trunc = 0.0;

  /// Throws ValidationError if a component is out of range or the parts
  /// exceed (delta_bar, epsilon).
  void validate() const;
};

ErrorBudget split_budget(double epsilon, double delta_bar, const BudgetFractions& fractions = {});

struct AlgorithmParameters {
  std::int64_t shots = 0;              // M
  double shot_hw_tolerance = 0.0;      // delta'_HW
  int coeff_bits = 0;                  // aleph
  int angle_bits = 0;                  // beth
  double truncation_threshold = 0.0;   // t
  std::int64_t iterations = 0;         // phase estimation iterations
};

/// Failure probabilities actually achieved by a parameter assignment.
struct FailureBreakdown {
  double delta_hw = 0.0;
  double delta_gs = 0.0;
  double delta_qpe = 0.0;

  double total() const { return delta_hw + delta_gs + delta_qpe; }
};

/// Smallest M >= 1 with (1 - gamma^2)^M <= p_gs.
std::int64_t compute_shots(double gamma, double p_gs);

/// 1 - (1 - p_hw)^(1/M).
double compute_shot_hw_tolerance(std::int64_t shots, double p_hw);

/// ceil(2.5 + log2(lambda / eps_coef)).
int compute_coeff_bits(double lambda, double eps_coef);

/// ceil(5.625 + log2(lambda * n_spin_orbitals / eps_ang)).
int compute_angle_bits(double lambda, int n_spin_orbitals, double eps_ang);

/// Largest tabulated threshold whose energy stays within eps_trunc of the
/// untruncated point.
double select_truncation_threshold(std::span<const TruncationPoint> curve, double eps_trunc);

/// Per-shot spectral-leakage failure allowance 1 - (1 - p_qpe)^(1/M).
double per_shot_leakage_allowance(std::int64_t shots, double p_qpe);

/// Smallest iteration count I with (pi lambda / (2 I eps_sl))^2 <= 1 - (1 - p_qpe)^(1/M).
std::int64_t compute_iterations(double lambda, std::int64_t shots, double p_qpe, double eps_sl);

FailureBreakdown failure_breakdown(double gamma, double lambda, const ErrorBudget& budget,
                                   const AlgorithmParameters& params);

/// Assigns every parameter for one instance and checks that the achieved
/// failure probabilities fit inside delta_bar.
AlgorithmParameters assign_parameters(const HamiltonianInstance& instance,
                                      const ErrorBudget& budget,
                                      NormVariant variant = NormVariant::original);

/// Eyring rate k = (k_B T / h) exp(-dG / (R T)) in 1/s, dG in kcal/mol.
double total_rate_from_barrier(double delta_g_kcal_per_mol, double temperature_kelvin);

}  // namespace qre
