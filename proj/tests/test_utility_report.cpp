#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"
#include "qre/utility_report.hpp"

using namespace qre;

namespace {

ReportInputs full_inputs() {
  ReportInputs in;
  in.catalog = load_catalog(std::string(QRE_DATA_DIR) + "/nitrogen_fixation.yaml");
  const auto config = load_architecture_config(std::string(QRE_DATA_DIR) + "/architecture.yaml");
  const auto budget = split_budget(1.6e-3, 0.01);
  const auto est = estimate_catalog(in.catalog, budget);
  in.logical = est.rows;
  in.logical_lpbliss = estimate_catalog(in.catalog, budget, NormVariant::lpbliss).rows;
  for (const auto& l : in.logical)
    in.physical.push_back(search_configuration(l, config.architecture, config.factories));
  in.dmrg = load_dmrg_summary(std::string(QRE_DATA_DIR) + "/dmrg_summary.csv");
  return in;
}

bool has_notice(const ReportDocument& d, const std::string& text) {
  return std::any_of(d.notices.begin(), d.notices.end(),
                     [&](const std::string& n) { return n.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("classical cost") {
  CHECK(classical_cost(65000) == doctest::Approx(2600.0));
  CHECK(classical_cost(400000) == doctest::Approx(16000.0));
  CHECK(classical_cost(0) == 0.0);
  CHECK_THROWS_AS(classical_cost(-1), ValidationError);
  CostModel m;
  m.cpu_hour_rate_usd = 0.1;
  CHECK(classical_cost(1000, m) == doctest::Approx(100.0));
  m.cpu_hour_rate_usd = 0.0;
  CHECK_THROWS_AS(m.validate(), ValidationError);
}

TEST_CASE("classical cost is linear") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> h(0, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double a = h(rng), b = h(rng);
    CHECK(classical_cost(a + b) == doctest::Approx(classical_cost(a) + classical_cost(b)));
  }
}

TEST_CASE("quantum share") {
  CHECK(quantum_share(100, 100, 1) == doctest::Approx(50.0));
  CHECK(quantum_share(100, 6400, 64) == doctest::Approx(50.0));
  CHECK(quantum_share(0, 100, 1) == doctest::Approx(100.0));
  CHECK(quantum_share(100, 0, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(quantum_share(1, 1, 0), ValidationError);
  CHECK_THROWS_AS(quantum_share(-1, 1, 1), ValidationError);

  const auto s = share_split(3, 7, 1);
  CHECK(s.quantum_percent == doctest::Approx(70.0));
  CHECK(s.quantum_percent + s.classical_percent == doctest::Approx(100.0));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> h(1, 1e5);
  for (int i = 0; i < 200; ++i) {
    const double q = h(rng), c = h(rng);
    double prev = quantum_share(q, c, 1);
    for (std::int64_t p = 2; p <= 512; p *= 2) {
      const double v = quantum_share(q, c, p);
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 100.0);
      prev = v;
    }
  }
}

TEST_CASE("default CPU grid") {
  const auto g = default_cpu_grid();
  REQUIRE(g.size() == 10);
  CHECK(g.front() == 1);
  CHECK(g.back() == 512);
}

TEST_CASE("comparison joins on instance key") {
  PhysicalResourceEstimate p;
  p.molecule_id = "A";
  p.n_orbitals = 60;
  p.runtime_hours = 10;
  DmrgSummaryRow d;
  d.molecule_id = "A";
  d.n_orbitals = 60;
  d.bond_dimension = 100;
  d.cpu_hours = 1.0;
  d.d_est = 200;
  DmrgSummaryRow other = d;
  other.n_orbitals = 61;
  const auto rows = build_comparison({p}, {d, other}, {1, 8});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].classical_cpu_hours == doctest::Approx(8.0));
  CHECK(rows[0].classical_cost_usd == doctest::Approx(0.32));
  CHECK(rows[0].quantum_share_percent == doctest::Approx(100.0 * 8 / 18));
  CHECK(rows[1].parallel_cpus == 8);
  CHECK(rows[1].quantum_share_percent == doctest::Approx(100.0 * 1 / 11));
}

TEST_CASE("report is deterministic and complete") {
  const auto in = full_inputs();
  const auto a = emit_report(in), b = emit_report(in);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].name == b.files[i].name);
    CHECK(a.files[i].content == b.files[i].content);
  }
  CHECK(a.files.back().name == "report.txt");
  for (const char* name : {"hamiltonians.csv", "norms.csv", "logical.csv", "logical_lpbliss.csv",
                           "physical.csv", "dmrg.csv", "comparison.csv", "plot_quantum_share.csv",
                           "plot_runtime_vs_qubits.csv"})
    CHECK_MESSAGE(a.find(name) != nullptr, name);
  CHECK(a.notices.empty());
  const auto& txt = a.find("report.txt")->content;
  CHECK(txt.find("$2600") != std::string::npos);
  CHECK(txt.find("defined by this tool") != std::string::npos);
}

TEST_CASE("logical table follows catalog order") {
  const auto in = full_inputs();
  const auto doc = emit_report(in);
  const auto rows = text::read_csv(doc.find("logical.csv")->content);
  REQUIRE(rows.size() == in.catalog.size() + 1);
  for (std::size_t i = 0; i < in.catalog.size(); ++i) {
    CHECK(rows[i + 1].fields[0] == in.catalog[i].molecule_id);
    CHECK(rows[i + 1].fields[1] == std::to_string(in.catalog[i].n_orbitals));
  }
}

TEST_CASE("missing sections are reported") {
  auto in = full_inputs();
  in.dmrg.clear();
  in.physical.clear();
  const auto doc = emit_report(in);
  CHECK(doc.find("dmrg.csv") == nullptr);
  CHECK(doc.find("comparison.csv") == nullptr);
  CHECK(has_notice(doc, "section omitted"));
  CHECK(doc.find("report.txt")->content.find("section omitted") != std::string::npos);

  CHECK_THROWS_AS(emit_report(ReportInputs{}), ValidationError);
}

TEST_CASE("inconsistent instance sets are reported") {
  auto in = full_inputs();
  in.physical.pop_back();
  in.logical.front().molecule_id = "ghost";
  const auto doc = emit_report(in);
  CHECK(has_notice(doc, "physical has no row for catalog instances"));
  CHECK(has_notice(doc, "logical has rows for instances not in the catalog: ghost"));
}

TEST_CASE("write_report writes every file") {
  const auto doc = emit_report(full_inputs());
  const auto dir = std::filesystem::temp_directory_path() / "qre_report_test";
  std::filesystem::remove_all(dir);
  write_report(doc, dir);
  for (const auto& f : doc.files) {
    std::ifstream in(dir / f.name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    CHECK(s.str() == f.content);
  }
  std::filesystem::remove_all(dir);
}
