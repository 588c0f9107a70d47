#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qre {

/// A Hamiltonian is identified by its molecule label together with the
/// active-space size; the same label appears with several active spaces.
struct InstanceKey {
  std::string molecule_id;
  int n_orbitals = 0;

  auto operator<=>(const InstanceKey&) const = default;
  bool operator==(const InstanceKey&) const = default;

  std::string str() const;
};

/// One point of a coupled-cluster energy vs. integral-truncation scan.
struct TruncationPoint {
  double threshold = 0.0;  // t >= 0
  double energy = 0.0;     // Hartree

  bool operator==(const TruncationPoint&) const = default;
};

/// Published logical cost used to calibrate the block-encoding model.
struct LogicalAnchor {
  std::int64_t toffoli_count = 0;
  std::int64_t logical_qubits = 0;

  bool operator==(const LogicalAnchor&) const = default;
};

/// L1 norms (Hartree). df_l1 is the lambda used by the estimator; the
/// remaining columns are optional and only needed by the norm accounting.
struct NormRecord {
  std::optional<double> pauli_l1;
  double df_l1 = 0.0;
  std::optional<double> pauli_l1_lpbliss;
  std::optional<double> df_l1_lpbliss;
  std::optional<double> half_width_fs_hf;
  std::optional<double> half_width_ens_hf;

  bool operator==(const NormRecord&) const = default;
};

/// Which Hamiltonian variant an estimate refers to.
enum class NormVariant { original, lpbliss };

std::string_view to_string(NormVariant v);

struct HamiltonianInstance {
  std::string molecule_id;
  std::string reaction;  // optional grouping label, empty when absent
  int n_orbitals = 0;
  int n_electrons = 0;
  int charge = 0;
  int multiplicity = 1;
  double overlap_gamma = 0.0;
  NormRecord norms;
  std::vector<TruncationPoint> truncation_curve;  // empty when absent
  std::optional<LogicalAnchor> reference_logical;
  std::optional<LogicalAnchor> reference_logical_lpbliss;

  InstanceKey key() const { return {molecule_id, n_orbitals}; }

  /// L1 norm of the block-encoded Hamiltonian for the given variant.
  /// Throws ValidationError ("missing lambda") if the norm is absent.
  double lambda(NormVariant variant) const;

  const std::optional<LogicalAnchor>& anchor(NormVariant variant) const;

  int n_spin_orbitals() const { return 2 * n_orbitals; }

  bool operator==(const HamiltonianInstance&) const = default;
};

/// Checks every invariant of the instance. Throws ValidationError naming the
/// instance and field; returns non-fatal warnings (e.g. an L1 norm below the
/// half spectral width, which the data is allowed to show).
std::vector<std::string> validate_instance(const HamiltonianInstance& instance);

/// Parses a catalog document. `source` is used in error messages.
std::vector<HamiltonianInstance> parse_catalog(std::string_view text,
                                               std::string_view source = "<string>");

/// Reads and validates an instance catalog file.
std::vector<HamiltonianInstance> load_catalog(const std::filesystem::path& path);

/// Serializes to the catalog format. Floating-point values are written with
/// the shortest representation that reads back to the same double.
std::string serialize_catalog(const std::vector<HamiltonianInstance>& instances);

void save_catalog(const std::filesystem::path& path,
                  const std::vector<HamiltonianInstance>& instances);

/// Collects warnings over a whole catalog, including duplicate keys.
std::vector<std::string> catalog_warnings(const std::vector<HamiltonianInstance>& instances);

/// floor(log10(C(N_o, N_alpha) * C(N_o, N_beta))) for the determinant space at
/// S_z = (multiplicity - 1) / 2.
int hilbert_space_log10(int n_orbitals, int n_electrons, int multiplicity);

struct NormRatios {
  double a_over_c = 0.0;  // Pauli L1 / LPBLISS DF L1
  double b_over_c = 0.0;  // DF L1 / LPBLISS DF L1
};

NormRatios norm_reduction_ratios(const NormRecord& record);

}  // namespace qre
