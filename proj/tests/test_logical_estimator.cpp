#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qre/errors.hpp"
#include "qre/logical_estimator.hpp"
#include "qre/text_format.hpp"

using namespace qre;

namespace {

std::vector<HamiltonianInstance> shipped() {
  return load_catalog(std::string(QRE_DATA_DIR) + "/nitrogen_fixation.yaml");
}

const HamiltonianInstance& find(const std::vector<HamiltonianInstance>& c, const std::string& id,
                                int no) {
  const auto it = std::find_if(c.begin(), c.end(), [&](const HamiltonianInstance& h) {
    return h.molecule_id == id && h.n_orbitals == no;
  });
  REQUIRE_MESSAGE(it != c.end(), id);
  return *it;
}

}  // namespace

TEST_CASE("calibration reproduces every anchor") {
  const auto catalog = shipped();
  const auto budget = split_budget(kReferenceEpsilon, kReferenceDeltaBar);
  const auto model = calibrate_cost_model(catalog, budget);
  CHECK(model.kind() == CostModelKind::calibrated_table);
  CHECK(model.warnings().empty());
  for (const auto& inst : catalog) {
    const auto est = estimate_logical(inst, budget, model);
    const auto anchor = *inst.reference_logical;
    INFO(inst.key().str());
    CHECK(std::abs(static_cast<double>(est.toffoli_per_shot - anchor.toffoli_count)) /
              static_cast<double>(anchor.toffoli_count) <=
          kCalibrationTolerance);
    CHECK(est.logical_qubits == anchor.logical_qubits);
    CHECK(est.toffoli_per_shot % est.parameters.iterations == 0);
  }
}

TEST_CASE("MoN2- per-iteration cost") {
  const auto catalog = shipped();
  const auto model = calibrate_cost_model(catalog, split_budget(1.6e-3, 0.01));
  const auto& e = model.table().at({"MoN2-", 33});
  CHECK(e.iterations == 6192539);
  CHECK(e.per_iteration_toffoli == 12434);
  CHECK(e.relative_residual < 1e-4);
}

TEST_CASE("estimates scale with the budget") {
  const auto catalog = shipped();
  const auto& h = find(catalog, "MoN2-", 33);
  const auto ref = estimate_catalog(catalog, split_budget(1.6e-3, 0.01));
  const auto loose = estimate_catalog(catalog, split_budget(3.2e-3, 0.01));
  REQUIRE(ref.rows.size() == catalog.size());
  const auto& a = *std::find_if(ref.rows.begin(), ref.rows.end(),
                                [&](const auto& r) { return r.key() == h.key(); });
  const auto& b = *std::find_if(loose.rows.begin(), loose.rows.end(),
                                [&](const auto& r) { return r.key() == h.key(); });
  CHECK(static_cast<double>(a.toffoli_per_shot) / static_cast<double>(b.toffoli_per_shot) ==
        doctest::Approx(2.0).epsilon(1e-5));
  CHECK(a.logical_qubits == b.logical_qubits);
}

TEST_CASE("estimate_catalog skips unanchored instances") {
  auto catalog = shipped();
  catalog[1].reference_logical.reset();
  const auto out = estimate_catalog(catalog, split_budget(1.6e-3, 0.01));
  CHECK(out.rows.size() == catalog.size() - 1);
  REQUIRE(out.warnings.size() == 1);
  CHECK(out.warnings[0].find(catalog[1].key().str()) != std::string::npos);

  const auto lp = estimate_catalog(shipped(), split_budget(1.6e-3, 0.01), NormVariant::lpbliss);
  CHECK(lp.rows.size() == 7);
  for (const auto& r : lp.rows) CHECK(r.variant == NormVariant::lpbliss);
}

TEST_CASE("calibrate_cost_model requires anchors") {
  auto catalog = shipped();
  catalog[0].reference_logical.reset();
  CHECK_THROWS_WITH_AS(calibrate_cost_model(catalog, split_budget(1.6e-3, 0.01)),
                       doctest::Contains("reference_logical"), ValidationError);
}

TEST_CASE("uncovered instance is rejected") {
  const auto catalog = shipped();
  const auto budget = split_budget(1.6e-3, 0.01);
  const auto model = calibrate_cost_model({catalog[0]}, budget);
  CHECK(model.covers(catalog[0].key()));
  CHECK_FALSE(model.covers(catalog[1].key()));
  CHECK_THROWS_WITH_AS(estimate_logical(catalog[1], budget, model),
                       doctest::Contains("no calibration"), ValidationError);
}

TEST_CASE("user-supplied cost model") {
  const auto catalog = shipped();
  const auto budget = split_budget(1.6e-3, 0.01);
  const auto model = BlockEncodingCostModel::user_supplied(
      [](const HamiltonianInstance& h, const AlgorithmParameters& p) {
        return static_cast<std::int64_t>(h.n_orbitals) * p.coeff_bits;
      },
      [](const HamiltonianInstance& h, const AlgorithmParameters&) {
        return static_cast<std::int64_t>(40 * h.n_orbitals);
      });
  CHECK(model.kind() == CostModelKind::user_supplied);
  const auto est = estimate_logical(catalog[0], budget, model);
  CHECK(est.toffoli_per_shot ==
        est.parameters.iterations * catalog[0].n_orbitals * est.parameters.coeff_bits);
  CHECK(est.logical_qubits == 40 * catalog[0].n_orbitals);

  CHECK_THROWS_AS(BlockEncodingCostModel::user_supplied(nullptr, nullptr), ValidationError);

  const auto zero = BlockEncodingCostModel::user_supplied(
      [](const HamiltonianInstance&, const AlgorithmParameters&) { return std::int64_t{0}; },
      [](const HamiltonianInstance&, const AlgorithmParameters&) { return std::int64_t{1}; });
  CHECK_THROWS_AS(estimate_logical(catalog[0], budget, zero), ValidationError);

  const auto huge = BlockEncodingCostModel::user_supplied(
      [](const HamiltonianInstance&, const AlgorithmParameters&) {
        return std::numeric_limits<std::int64_t>::max() / 2;
      },
      [](const HamiltonianInstance&, const AlgorithmParameters&) { return std::int64_t{1}; });
  CHECK_THROWS_AS(estimate_logical(catalog[0], budget, huge), InfeasibilityError);
}

TEST_CASE("compare_lpbliss") {
  const auto catalog = shipped();
  const auto budget = split_budget(1.6e-3, 0.01);
  const auto orig = estimate_catalog(catalog, budget);
  const auto lp = estimate_catalog(catalog, budget, NormVariant::lpbliss);
  for (const auto& t : lp.rows) {
    const auto& o = *std::find_if(orig.rows.begin(), orig.rows.end(),
                                  [&](const auto& r) { return r.key() == t.key(); });
    const auto r = compare_lpbliss(o, t);
    CHECK(r.shots_equal);
    CHECK(r.toffoli_ratio > 1.0);
  }
  CHECK_THROWS_AS(compare_lpbliss(orig.rows[0], orig.rows[1]), ValidationError);
}

TEST_CASE("logical CSV output") {
  const auto catalog = shipped();
  const auto out = estimate_catalog(catalog, split_budget(1.6e-3, 0.01));
  std::ostringstream os;
  write_logical_csv(os, out.rows);
  const auto rows = text::read_csv(os.str());
  REQUIRE(rows.size() == catalog.size() + 1);
  CHECK(rows[0].fields ==
        std::vector<std::string>{"molecule_id", "N_o", "M", "delta_hw", "N_Toffoli", "N_q",
                                 "gamma"});
  CHECK(rows[1].fields[0] == catalog[0].molecule_id);
  std::ostringstream table;
  write_logical_table(table, out.rows);
  CHECK(table.str().find("|gamma|") != std::string::npos);
}
