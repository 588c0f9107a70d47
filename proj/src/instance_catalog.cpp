#include "qre/instance_catalog.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

std::string InstanceKey::str() const {
  return molecule_id + "/" + std::to_string(n_orbitals);
}

std::string_view to_string(NormVariant v) {
  return v == NormVariant::original ? "original" : "lpbliss";
}

double HamiltonianInstance::lambda(NormVariant variant) const {
  if (variant == NormVariant::original) {
    if (!(norms.df_l1 > 0.0))
      throw ValidationError("instance " + key().str() + ": missing lambda (df_l1)");
    return norms.df_l1;
  }
  if (!norms.df_l1_lpbliss)
    throw ValidationError("instance " + key().str() + ": missing lambda (df_l1_lpbliss)");
  return *norms.df_l1_lpbliss;
}

const std::optional<LogicalAnchor>& HamiltonianInstance::anchor(NormVariant variant) const {
  return variant == NormVariant::original ? reference_logical : reference_logical_lpbliss;
}

// ---------------------------------------------------------------------------
// validation

namespace {

[[noreturn]] void invalid(const HamiltonianInstance& inst, std::string_view field,
                          const std::string& what) {
  throw ValidationError("instance " + inst.key().str() + ": field '" + std::string(field) +
                        "': " + what);
}

void check_positive_norm(const HamiltonianInstance& inst, std::string_view field,
                         const std::optional<double>& value) {
  if (value && !(std::isfinite(*value) && *value > 0.0))
    invalid(inst, field, "norm must be strictly positive, got " + text::shortest(*value));
}

void check_spin(int n_orbitals, int n_electrons, int multiplicity) {
  if (n_orbitals < 1) throw ValidationError("n_orbitals must be positive");
  if (n_electrons < 0) throw ValidationError("n_electrons must be non-negative");
  if (multiplicity < 1) throw ValidationError("multiplicity must be positive");
  if (n_electrons > 2 * n_orbitals)
    throw ValidationError("n_electrons exceeds 2 * n_orbitals");
  if (multiplicity - 1 > n_electrons || (n_electrons + multiplicity - 1) % 2 != 0)
    throw ValidationError("inconsistent spin: n_electrons=" + std::to_string(n_electrons) +
                          ", multiplicity=" + std::to_string(multiplicity));
  const int n_alpha = (n_electrons + multiplicity - 1) / 2;
  if (n_alpha > n_orbitals)
    throw ValidationError("inconsistent spin: more alpha electrons than orbitals");
}

}  // namespace

std::vector<std::string> validate_instance(const HamiltonianInstance& inst) {
  if (inst.molecule_id.empty()) invalid(inst, "molecule_id", "must not be empty");
  if (inst.n_orbitals < 1) invalid(inst, "n_orbitals", "must be positive");
  if (inst.n_electrons < 1) invalid(inst, "n_electrons", "must be positive");
  if (inst.multiplicity < 1) invalid(inst, "multiplicity", "must be positive");
  if (inst.n_electrons > 2 * inst.n_orbitals)
    invalid(inst, "n_electrons", "exceeds 2 * n_orbitals");
  if ((inst.n_electrons + inst.multiplicity - 1) % 2 != 0 ||
      inst.multiplicity - 1 > inst.n_electrons)
    invalid(inst, "multiplicity", "inconsistent with n_electrons");
  if (!(inst.overlap_gamma >= 0.0 && inst.overlap_gamma <= 1.0))
    invalid(inst, "overlap_gamma", "must lie in [0, 1], got " + text::shortest(inst.overlap_gamma));

  if (!(std::isfinite(inst.norms.df_l1) && inst.norms.df_l1 > 0.0))
    invalid(inst, "df_l1", "norm must be strictly positive, got " + text::shortest(inst.norms.df_l1));
  check_positive_norm(inst, "pauli_l1", inst.norms.pauli_l1);
  check_positive_norm(inst, "pauli_l1_lpbliss", inst.norms.pauli_l1_lpbliss);
  check_positive_norm(inst, "df_l1_lpbliss", inst.norms.df_l1_lpbliss);
  check_positive_norm(inst, "half_width_fs_hf", inst.norms.half_width_fs_hf);
  check_positive_norm(inst, "half_width_ens_hf", inst.norms.half_width_ens_hf);

  if (!inst.truncation_curve.empty()) {
    bool has_zero = false;
    for (const auto& p : inst.truncation_curve) {
      if (!(p.threshold >= 0.0) || !std::isfinite(p.threshold))
        invalid(inst, "truncation_curve", "threshold must be >= 0");
      if (!std::isfinite(p.energy)) invalid(inst, "truncation_curve", "energy must be finite");
      has_zero = has_zero || p.threshold == 0.0;
    }
    if (!has_zero) invalid(inst, "truncation_curve", "must contain a point with threshold 0");
  }

  for (auto variant : {NormVariant::original, NormVariant::lpbliss}) {
    const auto& a = inst.anchor(variant);
    if (a && (a->toffoli_count < 1 || a->logical_qubits < 1))
      invalid(inst,
              variant == NormVariant::original ? "reference_logical" : "reference_logical_lpbliss",
              "counts must be positive");
  }

  std::vector<std::string> warnings;
  // lambda >= Delta E / 2 holds for the exact spectrum; the tabulated half
  // widths are Hartree-Fock approximations, so a violation is only reported.
  const auto& n = inst.norms;
  if (n.half_width_ens_hf) {
    if (n.df_l1_lpbliss && *n.df_l1_lpbliss < *n.half_width_ens_hf)
      warnings.push_back("instance " + inst.key().str() +
                         ": df_l1_lpbliss is below half_width_ens_hf");
    if (n.df_l1 < *n.half_width_ens_hf)
      warnings.push_back("instance " + inst.key().str() + ": df_l1 is below half_width_ens_hf");
  }
  if (n.half_width_fs_hf && n.pauli_l1_lpbliss && *n.pauli_l1_lpbliss < *n.half_width_fs_hf)
    warnings.push_back("instance " + inst.key().str() +
                       ": pauli_l1_lpbliss is below half_width_fs_hf");
  return warnings;
}

std::vector<std::string> catalog_warnings(const std::vector<HamiltonianInstance>& instances) {
  std::vector<std::string> out;
  std::set<InstanceKey> seen;
  for (const auto& inst : instances) {
    if (!seen.insert(inst.key()).second)
      out.push_back("duplicate instance key " + inst.key().str());
    for (auto& w : validate_instance(inst)) out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    os << ": " << what;
    throw ValidationError(os.str());
  }

  void require_map(const YAML::Node& node, const std::string& ctx,
                   const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, ctx + " must be a mapping");
    for (const auto& kv : node) {
      const auto name = kv.first.as<std::string>();
      if (!allowed.count(name)) fail(kv.first, ctx + ": unknown field '" + name + "'");
    }
  }

  YAML::Node field(const YAML::Node& map, const std::string& ctx, const std::string& name) const {
    auto node = map[name];
    if (!node.IsDefined() || node.IsNull()) fail(map, ctx + ": missing field '" + name + "'");
    return node;
  }

  double real(const YAML::Node& node, const std::string& ctx, const std::string& name) const {
    double v = 0.0;
    if (!node.IsScalar() || !text::parse_double(node.Scalar(), v) || !std::isfinite(v))
      fail(node, ctx + ": field '" + name + "' must be a finite real number");
    return v;
  }

  long long integer(const YAML::Node& node, const std::string& ctx,
                    const std::string& name) const {
    long long v = 0;
    if (!node.IsScalar() || !text::parse_int(node.Scalar(), v))
      fail(node, ctx + ": field '" + name + "' must be an integer");
    return v;
  }

  int small_int(const YAML::Node& node, const std::string& ctx, const std::string& name) const {
    const long long v = integer(node, ctx, name);
    if (v < -1000000 || v > 1000000) fail(node, ctx + ": field '" + name + "' out of range");
    return static_cast<int>(v);
  }

  std::string string(const YAML::Node& node, const std::string& ctx,
                     const std::string& name) const {
    if (!node.IsScalar()) fail(node, ctx + ": field '" + name + "' must be a string");
    return node.Scalar();
  }

  std::optional<double> optional_real(const YAML::Node& map, const std::string& ctx,
                                      const std::string& name) const {
    auto node = map[name];
    if (!node.IsDefined() || node.IsNull()) return std::nullopt;
    return real(node, ctx, name);
  }

  LogicalAnchor anchor(const YAML::Node& node, const std::string& ctx) const {
    require_map(node, ctx, {"toffoli_count", "logical_qubits"});
    LogicalAnchor a;
    a.toffoli_count = integer(field(node, ctx, "toffoli_count"), ctx, "toffoli_count");
    a.logical_qubits = integer(field(node, ctx, "logical_qubits"), ctx, "logical_qubits");
    return a;
  }

  HamiltonianInstance instance(const YAML::Node& node, std::size_t index) const {
    std::string ctx = "instance #" + std::to_string(index + 1);
    require_map(node, ctx,
                {"molecule_id", "reaction", "n_orbitals", "n_electrons", "charge", "multiplicity",
                 "overlap_gamma", "norms", "truncation_curve", "reference_logical",
                 "reference_logical_lpbliss"});
    HamiltonianInstance inst;
    inst.molecule_id = string(field(node, ctx, "molecule_id"), ctx, "molecule_id");
    ctx = "instance '" + inst.molecule_id + "'";
    if (auto r = node["reaction"]; r.IsDefined() && !r.IsNull())
      inst.reaction = string(r, ctx, "reaction");
    inst.n_orbitals = small_int(field(node, ctx, "n_orbitals"), ctx, "n_orbitals");
    inst.n_electrons = small_int(field(node, ctx, "n_electrons"), ctx, "n_electrons");
    inst.charge = small_int(field(node, ctx, "charge"), ctx, "charge");
    inst.multiplicity = small_int(field(node, ctx, "multiplicity"), ctx, "multiplicity");
    inst.overlap_gamma = real(field(node, ctx, "overlap_gamma"), ctx, "overlap_gamma");

    auto norms = field(node, ctx, "norms");
    const std::string nctx = ctx + " norms";
    require_map(norms, nctx,
                {"pauli_l1", "df_l1", "pauli_l1_lpbliss", "df_l1_lpbliss", "half_width_fs_hf",
                 "half_width_ens_hf"});
    inst.norms.df_l1 = real(field(norms, nctx, "df_l1"), nctx, "df_l1");
    inst.norms.pauli_l1 = optional_real(norms, nctx, "pauli_l1");
    inst.norms.pauli_l1_lpbliss = optional_real(norms, nctx, "pauli_l1_lpbliss");
    inst.norms.df_l1_lpbliss = optional_real(norms, nctx, "df_l1_lpbliss");
    inst.norms.half_width_fs_hf = optional_real(norms, nctx, "half_width_fs_hf");
    inst.norms.half_width_ens_hf = optional_real(norms, nctx, "half_width_ens_hf");

    if (auto curve = node["truncation_curve"]; curve.IsDefined() && !curve.IsNull()) {
      const std::string cctx = ctx + " truncation_curve";
      if (!curve.IsSequence()) fail(curve, cctx + " must be a list");
      for (const auto& p : curve) {
        require_map(p, cctx, {"threshold", "energy"});
        inst.truncation_curve.push_back(
            {real(field(p, cctx, "threshold"), cctx, "threshold"),
             real(field(p, cctx, "energy"), cctx, "energy")});
      }
    }
    if (auto a = node["reference_logical"]; a.IsDefined() && !a.IsNull())
      inst.reference_logical = anchor(a, ctx + " reference_logical");
    if (auto a = node["reference_logical_lpbliss"]; a.IsDefined() && !a.IsNull())
      inst.reference_logical_lpbliss = anchor(a, ctx + " reference_logical_lpbliss");

    try {
      validate_instance(inst);
    } catch (const ValidationError& e) {
      fail(node, e.what());
    }
    return inst;
  }

 private:
  std::string source_;
};

}  // namespace

std::vector<HamiltonianInstance> parse_catalog(std::string_view text, std::string_view source) {
  Reader reader(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string(source) + ":" + std::to_string(e.mark.line + 1) +
                          ": parse error: " + e.msg);
  }
  reader.require_map(root, "catalog", {"schema_version", "instances"});
  auto version = reader.field(root, "catalog", "schema_version");
  if (reader.integer(version, "catalog", "schema_version") != 1)
    reader.fail(version, "catalog: unsupported schema_version (expected 1)");

  std::vector<HamiltonianInstance> out;
  auto list = root["instances"];
  if (!list.IsDefined() || list.IsNull()) return out;
  if (!list.IsSequence()) reader.fail(list, "catalog: 'instances' must be a list");
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(reader.instance(list[i], i));
  return out;
}

std::vector<HamiltonianInstance> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string yaml_quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void emit_optional(std::ostringstream& os, const char* name, const std::optional<double>& v) {
  if (v) os << "      " << name << ": " << text::shortest(*v) << "\n";
}

void emit_anchor(std::ostringstream& os, const char* name, const std::optional<LogicalAnchor>& a) {
  if (!a) return;
  os << "    " << name << ":\n"
     << "      toffoli_count: " << a->toffoli_count << "\n"
     << "      logical_qubits: " << a->logical_qubits << "\n";
}

}  // namespace

std::string serialize_catalog(const std::vector<HamiltonianInstance>& instances) {
  std::ostringstream os;
  os << "schema_version: 1\n";
  if (instances.empty()) {
    os << "instances: []\n";
    return os.str();
  }
  os << "instances:\n";
  for (const auto& inst : instances) {
    os << "  - molecule_id: " << yaml_quoted(inst.molecule_id) << "\n";
    if (!inst.reaction.empty()) os << "    reaction: " << yaml_quoted(inst.reaction) << "\n";
    os << "    n_orbitals: " << inst.n_orbitals << "\n"
       << "    n_electrons: " << inst.n_electrons << "\n"
       << "    charge: " << inst.charge << "\n"
       << "    multiplicity: " << inst.multiplicity << "\n"
       << "    overlap_gamma: " << text::shortest(inst.overlap_gamma) << "\n"
       << "    norms:\n";
    emit_optional(os, "pauli_l1", inst.norms.pauli_l1);
    os << "      df_l1: " << text::shortest(inst.norms.df_l1) << "\n";
    emit_optional(os, "pauli_l1_lpbliss", inst.norms.pauli_l1_lpbliss);
    emit_optional(os, "df_l1_lpbliss", inst.norms.df_l1_lpbliss);
    emit_optional(os, "half_width_fs_hf", inst.norms.half_width_fs_hf);
    emit_optional(os, "half_width_ens_hf", inst.norms.half_width_ens_hf);
    if (!inst.truncation_curve.empty()) {
      os << "    truncation_curve:\n";
      for (const auto& p : inst.truncation_curve)
        os << "      - {threshold: " << text::shortest(p.threshold)
           << ", energy: " << text::shortest(p.energy) << "}\n";
    }
    emit_anchor(os, "reference_logical", inst.reference_logical);
    emit_anchor(os, "reference_logical_lpbliss", inst.reference_logical_lpbliss);
  }
  return os.str();
}

void save_catalog(const std::filesystem::path& path,
                  const std::vector<HamiltonianInstance>& instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write catalog file " + path.string());
  out << serialize_catalog(instances);
  if (!out) throw IoError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// sizing and norm accounting

int hilbert_space_log10(int n_orbitals, int n_electrons, int multiplicity) {
  check_spin(n_orbitals, n_electrons, multiplicity);
  const int n_alpha = (n_electrons + multiplicity - 1) / 2;
  const int n_beta = n_electrons - n_alpha;
  auto log_binom = [](int n, int k) {
    return std::lgamma(static_cast<long double>(n) + 1) -
           std::lgamma(static_cast<long double>(k) + 1) -
           std::lgamma(static_cast<long double>(n - k) + 1);
  };
  const long double ln_dim = log_binom(n_orbitals, n_alpha) + log_binom(n_orbitals, n_beta);
  const long double log10_dim = ln_dim / std::log(10.0L);
  // Guard against lgamma round-off just below an exact power of ten.
  return static_cast<int>(std::floor(log10_dim + 1e-12L));
}

NormRatios norm_reduction_ratios(const NormRecord& record) {
  if (!record.pauli_l1) throw ValidationError("missing norm: pauli_l1");
  if (!record.df_l1_lpbliss) throw ValidationError("missing norm: df_l1_lpbliss");
  if (!(record.df_l1 > 0.0)) throw ValidationError("missing norm: df_l1");
  if (!(*record.df_l1_lpbliss > 0.0)) throw ValidationError("df_l1_lpbliss must be positive");
  return {*record.pauli_l1 / *record.df_l1_lpbliss, record.df_l1 / *record.df_l1_lpbliss};
}

}  // namespace qre
