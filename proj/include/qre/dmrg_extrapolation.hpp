#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qre {

/// One DMRG calculation of a convergence series.
struct DmrgPoint {
  std::int64_t bond_dimension = 0;
  double energy = 0.0;            // Hartree
  double truncated_weight = 0.0;  // discarded weight at the last sweep
  std::optional<double> cpu_hours;
};

/// Ordinary least squares of y on x with standard errors from the residual
/// variance on n - 2 degrees of freedom.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_se = 0.0;
  double slope_se = 0.0;
  std::size_t n = 0;
};

/// Throws ValidationError for fewer than 3 points, mismatched lengths,
/// non-finite values or identical abscissae.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// z multiplier for the two-sided 95% intervals.
inline constexpr double kZ95 = 1.96;

struct EnergyFit {
  double e_est = 0.0;
  double slope = 0.0;
  double e_est_ci95 = 0.0;  // half-width, kZ95 * intercept standard error
  double intercept_se = 0.0;
  double slope_se = 0.0;
};

/// E = e_est + slope * truncated_weight.
EnergyFit fit_energy_extrapolation(std::span<const DmrgPoint> points);

struct BondDimensionFit {
  double a = 0.0;
  double b = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double d_est = 0.0;
  double d_min = 0.0;  // over the admissible (a +- 1.96 sigma_a, b +- 1.96 sigma_b) corners
  double d_max = 0.0;
  std::vector<std::string> warnings;
};

/// Fits ln(E - e_est) = a + b (ln D)^2 and solves for the bond dimension whose
/// residual equals delta: D_est = exp(sqrt((ln delta - a) / b)).
BondDimensionFit fit_bond_dimension(std::span<const DmrgPoint> points, double e_est,
                                    double delta = 1e-3);

/// T(target) = T(D_ref) (target / D_ref)^3 with D_ref the largest timed point.
double cpu_time_forecast(std::span<const DmrgPoint> points, double target_d);

/// CSV with header bond_dimension,energy,truncated_weight[,cpu_hours].
/// Blank lines and lines starting with '#' are skipped.
std::vector<DmrgPoint> parse_dmrg_series(std::string_view text,
                                         std::string_view source = "<string>");
std::vector<DmrgPoint> load_dmrg_series(const std::filesystem::path& path);

/// One row of an extrapolation summary: the largest-D calculation plus the
/// derived energy and bond-dimension estimates.
struct DmrgSummaryRow {
  std::string molecule_id;
  int n_orbitals = 0;
  std::int64_t bond_dimension = 0;
  double energy = 0.0;
  std::optional<double> cpu_hours;
  double e_est = 0.0;
  std::optional<double> e_est_ci95;
  double d_est = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;

  /// Cubic forecast from (bond_dimension, cpu_hours) to d_est; empty when
  /// the row carries no timing.
  std::optional<double> forecast_cpu_hours() const;
};

DmrgSummaryRow summarize_series(std::string molecule_id, int n_orbitals,
                                std::span<const DmrgPoint> points, double delta = 1e-3);

/// Columns: molecule_id,N_o,bond_dimension,energy,cpu_hours,e_est,e_est_ci95,
/// d_est,d_min,d_max. Optional cells may be empty.
std::vector<DmrgSummaryRow> parse_dmrg_summary(std::string_view text,
                                               std::string_view source = "<string>");
std::vector<DmrgSummaryRow> load_dmrg_summary(const std::filesystem::path& path);
void write_dmrg_summary_csv(std::ostream& os, const std::vector<DmrgSummaryRow>& rows);
void write_dmrg_summary_table(std::ostream& os, const std::vector<DmrgSummaryRow>& rows);

}  // namespace qre
