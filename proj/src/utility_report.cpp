#include "qre/utility_report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

void CostModel::validate() const {
  if (!(cpu_hour_rate_usd > 0.0) || !std::isfinite(cpu_hour_rate_usd))
    throw ValidationError("cpu_hour_rate_usd must be positive");
  if (!(utility_min_usd > 0.0) || !(utility_min_usd <= utility_max_usd) ||
      !std::isfinite(utility_max_usd))
    throw ValidationError("utility range must satisfy 0 < min <= max");
}

double classical_cost(double cpu_hours, const CostModel& model) {
  model.validate();
  if (!(cpu_hours >= 0.0)) throw ValidationError("cpu_hours must be >= 0");
  return cpu_hours * model.cpu_hour_rate_usd;
}

double quantum_share(double quantum_hours, double classical_cpu_hours,
                     std::int64_t parallel_cpus) {
  if (parallel_cpus < 1) throw ValidationError("parallel_cpus must be >= 1");
  if (!(quantum_hours >= 0.0) || !(classical_cpu_hours >= 0.0))
    throw ValidationError("hours must be >= 0");
  const double classical_wall = classical_cpu_hours / static_cast<double>(parallel_cpus);
  const double total = classical_wall + quantum_hours;
  if (total == 0.0) return 0.0;
  return 100.0 * classical_wall / total;
}

ShareSplit share_split(double quantum_hours, double classical_cpu_hours,
                       std::int64_t parallel_cpus) {
  const double q = quantum_share(quantum_hours, classical_cpu_hours, parallel_cpus);
  return {q, 100.0 - q};
}

std::vector<ComparisonRow> build_comparison(const std::vector<PhysicalResourceEstimate>& physical,
                                            const std::vector<DmrgSummaryRow>& dmrg,
                                            const std::vector<std::int64_t>& cpus,
                                            const CostModel& model) {
  std::map<InstanceKey, double> forecast;
  for (const auto& r : dmrg)
    if (auto f = r.forecast_cpu_hours()) forecast[{r.molecule_id, r.n_orbitals}] = *f;

  std::vector<ComparisonRow> rows;
  for (const auto& p : physical) {
    auto it = forecast.find({p.molecule_id, p.n_orbitals});
    if (it == forecast.end()) continue;
    for (auto cpu : cpus) {
      ComparisonRow row;
      row.molecule_id = p.molecule_id;
      row.n_orbitals = p.n_orbitals;
      row.classical_cpu_hours = it->second;
      row.classical_cost_usd = classical_cost(it->second, model);
      row.quantum_runtime_hours = p.runtime_hours;
      row.parallel_cpus = cpu;
      row.quantum_share_percent = quantum_share(p.runtime_hours, it->second, cpu);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::int64_t> default_cpu_grid() {
  std::vector<std::int64_t> grid;
  for (std::int64_t p = 1; p <= 512; p *= 2) grid.push_back(p);
  return grid;
}

const ReportFile* ReportDocument::find(const std::string& name) const {
  for (const auto& f : files)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

std::string money(double usd) { return "$" + text::fixed(usd, 0); }

std::string key_list(const std::set<InstanceKey>& keys) {
  std::string out;
  for (const auto& k : keys) out += (out.empty() ? "" : ", ") + k.str();
  return out;
}

template <class Rows, class KeyOf>
void compare_ids(const std::set<InstanceKey>& catalog, const Rows& rows, KeyOf key_of,
                 const std::string& section, std::vector<std::string>& notices) {
  if (catalog.empty() || rows.empty()) return;
  std::set<InstanceKey> present;
  for (const auto& r : rows) present.insert(key_of(r));
  std::set<InstanceKey> missing, extra;
  std::set_difference(catalog.begin(), catalog.end(), present.begin(), present.end(),
                      std::inserter(missing, missing.end()));
  std::set_difference(present.begin(), present.end(), catalog.begin(), catalog.end(),
                      std::inserter(extra, extra.end()));
  if (!missing.empty())
    notices.push_back(section + " has no row for catalog instances: " + key_list(missing));
  if (!extra.empty())
    notices.push_back(section + " has rows for instances not in the catalog: " + key_list(extra));
}

std::string hamiltonians_csv(const std::vector<HamiltonianInstance>& catalog) {
  std::ostringstream os;
  os << "molecule_id,reaction,N_o,N_e,charge,multiplicity,log10_hilbert\n";
  for (const auto& h : catalog)
    os << text::csv_field(h.molecule_id) << ',' << text::csv_field(h.reaction) << ','
       << h.n_orbitals << ',' << h.n_electrons << ',' << h.charge << ',' << h.multiplicity << ','
       << hilbert_space_log10(h.n_orbitals, h.n_electrons, h.multiplicity) << '\n';
  return os.str();
}

std::string opt(const std::optional<double>& v) { return v ? text::shortest(*v) : ""; }

std::string norms_csv(const std::vector<HamiltonianInstance>& catalog) {
  std::ostringstream os;
  os << "molecule_id,N_o,pauli_l1,df_l1,pauli_l1_lpbliss,df_l1_lpbliss,a_over_c,b_over_c\n";
  for (const auto& h : catalog) {
    const auto& n = h.norms;
    std::string ac, bc;
    if (n.pauli_l1 && n.df_l1_lpbliss) {
      const auto r = norm_reduction_ratios(n);
      ac = text::shortest(r.a_over_c);
      bc = text::shortest(r.b_over_c);
    }
    os << text::csv_field(h.molecule_id) << ',' << h.n_orbitals << ',' << opt(n.pauli_l1) << ','
       << text::shortest(n.df_l1) << ',' << opt(n.pauli_l1_lpbliss) << ','
       << opt(n.df_l1_lpbliss) << ',' << ac << ',' << bc << '\n';
  }
  return os.str();
}

}  // namespace

ReportDocument emit_report(const ReportInputs& in) {
  in.cost.validate();
  if (in.catalog.empty() && in.logical.empty() && in.logical_lpbliss.empty() &&
      in.physical.empty() && in.sweep.empty() && in.dmrg.empty())
    throw ValidationError("report has no populated section");
  for (auto p : in.cpus)
    if (p < 1) throw ValidationError("parallel_cpus must be >= 1");

  ReportDocument doc;
  std::ostringstream txt;
  auto& notices = doc.notices;
  auto add = [&](std::string name, std::string content) {
    doc.files.push_back({std::move(name), std::move(content)});
  };
  auto omitted = [&](const std::string& section, const std::string& why) {
    notices.push_back(section + " section omitted: " + why);
  };

  std::set<InstanceKey> catalog_keys;
  std::map<InstanceKey, std::string> reaction_of;
  for (const auto& h : in.catalog) {
    catalog_keys.insert(h.key());
    reaction_of[h.key()] = h.reaction.empty() ? "unlabelled" : h.reaction;
  }
  const auto est_key = [](const auto& r) { return InstanceKey{r.molecule_id, r.n_orbitals}; };
  compare_ids(catalog_keys, in.logical, est_key, "logical", notices);
  compare_ids(catalog_keys, in.physical, est_key, "physical", notices);
  compare_ids(catalog_keys, in.dmrg, est_key, "dmrg", notices);

  txt << "Resource estimation report\n==========================\n";

  if (!in.catalog.empty()) {
    add("hamiltonians.csv", hamiltonians_csv(in.catalog));
    add("norms.csv", norms_csv(in.catalog));
    std::vector<std::vector<std::string>> cells;
    for (const auto& h : in.catalog)
      cells.push_back({h.molecule_id, std::to_string(h.n_orbitals), std::to_string(h.n_electrons),
                       std::to_string(h.charge), std::to_string(h.multiplicity),
                       std::to_string(hilbert_space_log10(h.n_orbitals, h.n_electrons,
                                                          h.multiplicity))});
    txt << "\nHamiltonians\n\n"
        << text::aligned_table({"Molecule ID", "N_o", "N_e", "Charge", "Mult.", "log10 dim"},
                               cells);
  } else {
    omitted("hamiltonian", "no catalog");
  }

  if (!in.logical.empty()) {
    std::ostringstream csv;
    write_logical_csv(csv, in.logical);
    add("logical.csv", csv.str());
    txt << "\nLogical resources\n\n";
    write_logical_table(txt, in.logical);
  } else {
    omitted("logical", "no logical estimates");
  }

  if (!in.logical_lpbliss.empty()) {
    std::ostringstream csv;
    write_logical_csv(csv, in.logical_lpbliss);
    add("logical_lpbliss.csv", csv.str());
    txt << "\nLogical resources, LPBLISS-treated Hamiltonians\n\n";
    write_logical_table(txt, in.logical_lpbliss);

    std::map<InstanceKey, const LogicalResourceEstimate*> original;
    for (const auto& r : in.logical) original[r.key()] = &r;
    std::ostringstream red;
    red << "molecule_id,N_o,toffoli_ratio,qubit_ratio,shots_equal\n";
    bool any = false;
    for (const auto& t : in.logical_lpbliss) {
      auto it = original.find(t.key());
      if (it == original.end()) continue;
      const auto r = compare_lpbliss(*it->second, t);
      red << text::csv_field(t.molecule_id) << ',' << t.n_orbitals << ','
          << text::shortest(r.toffoli_ratio) << ',' << text::shortest(r.qubit_ratio) << ','
          << (r.shots_equal ? "true" : "false") << '\n';
      any = true;
    }
    if (any) add("lpbliss_reduction.csv", red.str());
  } else {
    omitted("LPBLISS logical", "no LPBLISS estimates");
  }

  if (!in.physical.empty()) {
    std::ostringstream csv;
    write_physical_csv(csv, in.physical);
    add("physical.csv", csv.str());
    txt << "\nPhysical resources\n\n";
    write_physical_table(txt, in.physical);

    if (!reaction_of.empty()) {
      struct Totals {
        double hours = 0.0;
        std::int64_t max_qubits = 0;
      };
      std::map<std::string, Totals> totals;
      for (const auto& p : in.physical) {
        auto it = reaction_of.find({p.molecule_id, p.n_orbitals});
        if (it == reaction_of.end()) continue;
        auto& t = totals[it->second];
        t.hours += p.runtime_hours;
        t.max_qubits = std::max(t.max_qubits, p.physical_qubits);
      }
      std::ostringstream plot;
      plot << "reaction,total_runtime_hours,max_physical_qubits\n";
      for (const auto& [reaction, t] : totals)
        plot << text::csv_field(reaction) << ',' << text::shortest(t.hours) << ','
             << t.max_qubits << '\n';
      add("plot_reaction_totals.csv", plot.str());
    }
  } else {
    omitted("physical", "no physical estimates");
  }

  if (!in.sweep.empty()) {
    std::ostringstream plot;
    plot << "instance,delta_bar,runtime_hours\n";
    for (const auto& s : in.sweep)
      plot << text::csv_field(in.sweep_instance) << ',' << text::shortest(s.delta_bar) << ','
           << text::shortest(s.runtime_hours) << '\n';
    add("plot_runtime_vs_failure.csv", plot.str());
  }

  if (!in.dmrg.empty()) {
    std::ostringstream csv;
    write_dmrg_summary_csv(csv, in.dmrg);
    add("dmrg.csv", csv.str());
    txt << "\nDMRG extrapolation\n\n";
    write_dmrg_summary_table(txt, in.dmrg);

    double sum = 0.0;
    int count = 0;
    for (const auto& r : in.dmrg)
      if (r.n_orbitals >= in.high_utility_min_orbitals)
        if (auto f = r.forecast_cpu_hours()) {
          sum += *f;
          ++count;
        }
    txt << "\nClassical cost at $" << text::shortest(in.cost.cpu_hour_rate_usd)
        << " per CPU-hour\n\n";
    if (count > 0) {
      const double mean = sum / count;
      txt << "  instances with N_o >= " << in.high_utility_min_orbitals << ": " << count << '\n'
          << "  mean forecast CPU-hours: " << text::fixed(mean, 0) << '\n'
          << "  mean classical cost:     " << money(classical_cost(mean, in.cost)) << '\n'
          << "  total forecast CPU-hours: " << text::fixed(sum, 0) << '\n';
    } else {
      txt << "  no timed instance with N_o >= " << in.high_utility_min_orbitals << '\n';
    }
    txt << "  [1] 65,000 CPU-hours at $0.04 per CPU-hour is "
        << money(classical_cost(65000.0, CostModel{})) << ". A figure of $2,800 is sometimes"
        << " quoted for this product; it does not equal the arithmetic and is not used here.\n"
        << "  Utility value per reaction: " << money(in.cost.utility_min_usd) << " to "
        << money(in.cost.utility_max_usd) << ".\n";
  } else {
    omitted("DMRG", "no DMRG summary");
  }

  const auto comparison = build_comparison(in.physical, in.dmrg, in.cpus, in.cost);
  if (!comparison.empty()) {
    std::ostringstream csv;
    csv << "molecule_id,N_o,classical_cpu_hours,classical_cost_usd,quantum_runtime_hours,"
           "parallel_cpus,quantum_share_percent\n";
    for (const auto& r : comparison)
      csv << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ','
          << text::shortest(r.classical_cpu_hours) << ',' << text::shortest(r.classical_cost_usd)
          << ',' << text::shortest(r.quantum_runtime_hours) << ',' << r.parallel_cpus << ','
          << text::shortest(r.quantum_share_percent) << '\n';
    add("comparison.csv", csv.str());

    std::map<InstanceKey, std::int64_t> qubits;
    for (const auto& p : in.physical) qubits[{p.molecule_id, p.n_orbitals}] = p.physical_qubits;
    std::ostringstream rq;
    rq << "molecule_id,N_o,physical_qubits,quantum_runtime_hours,classical_cpu_hours,"
          "classical_cost_usd\n";
    std::set<InstanceKey> seen;
    for (const auto& r : comparison) {
      if (r.n_orbitals < in.high_utility_min_orbitals) continue;
      if (!seen.insert({r.molecule_id, r.n_orbitals}).second) continue;
      rq << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ','
         << qubits[{r.molecule_id, r.n_orbitals}] << ',' << text::shortest(r.quantum_runtime_hours)
         << ',' << text::shortest(r.classical_cpu_hours) << ','
         << text::shortest(r.classical_cost_usd) << '\n';
    }
    add("plot_runtime_vs_qubits.csv", rq.str());

    std::ostringstream share;
    share << "parallel_cpus,molecule_id,N_o,quantum_share_percent\n";
    for (auto cpu : in.cpus)
      for (const auto& r : comparison)
        if (r.parallel_cpus == cpu)
          share << cpu << ',' << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ','
                << text::shortest(r.quantum_share_percent) << '\n';
    add("plot_quantum_share.csv", share.str());

    std::vector<std::vector<std::string>> cells;
    for (const auto& r : comparison)
      if (r.parallel_cpus == in.cpus.front() || r.parallel_cpus == in.cpus.back())
        cells.push_back({r.molecule_id, std::to_string(r.n_orbitals),
                         text::fixed(r.classical_cpu_hours, 0), money(r.classical_cost_usd),
                         text::scientific(r.quantum_runtime_hours, 3),
                         std::to_string(r.parallel_cpus),
                         text::fixed(r.quantum_share_percent, 1)});
    txt << "\nQuantum vs classical\n\n"
        << "  quantum share = 100 * (C / P) / (C / P + Q), with C classical CPU-hours spread\n"
        << "  perfectly over P CPUs and Q quantum hours. This metric is defined by this tool.\n\n"
        << text::aligned_table({"Molecule ID", "N_o", "CPU-hours", "Cost", "QPU-hours", "P",
                                "Quantum share (%)"},
                               cells);
  } else {
    omitted("comparison", "needs both physical estimates and timed DMRG rows");
  }

  if (!notices.empty()) {
    txt << "\nNotices\n\n";
    for (const auto& n : notices) txt << "  - " << n << '\n';
  }
  add("report.txt", txt.str());
  return doc;
}

void write_report(const ReportDocument& doc, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& f : doc.files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / f.name).string());
    out << f.content;
    if (!out) throw IoError("write failed for " + (dir / f.name).string());
  }
}

}  // namespace qre
