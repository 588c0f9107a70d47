#include "qre/dmrg_extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qre/errors.hpp"
#include "qre/text_format.hpp"

namespace qre {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw ValidationError("fit: need at least 3 points, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw ValidationError("fit: non-finite value at point " + std::to_string(i));
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }))
    throw ValidationError("fit: zero variance in the abscissa");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit: zero variance in the abscissa");

  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;

  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ssr += r * r;
  }
  const double s2 = ssr / static_cast<double>(n - 2);
  f.slope_se = std::sqrt(s2 / sxx);
  f.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  return f;
}

namespace {

void check_points(std::span<const DmrgPoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.bond_dimension < 1)
      throw ValidationError("point " + std::to_string(i) + ": bond_dimension must be >= 1");
    if (!(p.truncated_weight >= 0.0) || !std::isfinite(p.truncated_weight))
      throw ValidationError("point " + std::to_string(i) + ": truncated_weight must be >= 0");
    if (!std::isfinite(p.energy))
      throw ValidationError("point " + std::to_string(i) + ": energy must be finite");
    if (p.cpu_hours && !(*p.cpu_hours >= 0.0))
      throw ValidationError("point " + std::to_string(i) + ": cpu_hours must be >= 0");
  }
}

std::optional<double> solve_bond_dimension(double a, double b, double log_delta) {
  if (!(b < 0.0)) return std::nullopt;
  const double radicand = (log_delta - a) / b;
  if (!(radicand >= 0.0)) return std::nullopt;
  return std::exp(std::sqrt(radicand));
}

}  // namespace

EnergyFit fit_energy_extrapolation(std::span<const DmrgPoint> points) {
  check_points(points);
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(p.truncated_weight);
    y.push_back(p.energy);
  }
  const auto line = fit_line(x, y);
  return {line.intercept, line.slope, kZ95 * line.intercept_se, line.intercept_se,
          line.slope_se};
}

BondDimensionFit fit_bond_dimension(std::span<const DmrgPoint> points, double e_est,
                                    double delta) {
  check_points(points);
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ValidationError("target accuracy delta must be positive");
  std::vector<double> x, y;
  for (const auto& p : points) {
    const double residual = p.energy - e_est;
    if (!(residual > 0.0))
      throw ValidationError("point D=" + std::to_string(p.bond_dimension) + " (energy " +
                            text::shortest(p.energy) + ") lies at or below e_est " +
                            text::shortest(e_est));
    const double log_d = std::log(static_cast<double>(p.bond_dimension));
    x.push_back(log_d * log_d);
    y.push_back(std::log(residual));
  }
  const auto line = fit_line(x, y);

  BondDimensionFit f;
  f.a = line.intercept;
  f.b = line.slope;
  f.sigma_a = line.intercept_se;
  f.sigma_b = line.slope_se;
  if (!(f.b < 0.0))
    throw ValidationError("bond-dimension fit diverges: b = " + text::shortest(f.b) +
                          " is not negative");
  const double log_delta = std::log(delta);
  const auto central = solve_bond_dimension(f.a, f.b, log_delta);
  if (!central)
    throw ValidationError("residual is already below delta = " + text::shortest(delta) +
                          " for every bond dimension under the fit");
  f.d_est = *central;

  bool any = false;
  for (int sa : {-1, 1})
    for (int sb : {-1, 1}) {
      const double ca = f.a + sa * kZ95 * f.sigma_a;
      const double cb = f.b + sb * kZ95 * f.sigma_b;
      const auto d = solve_bond_dimension(ca, cb, log_delta);
      if (!d) {
        f.warnings.push_back("corner (a" + std::string(sa > 0 ? "+" : "-") + ", b" +
                             (sb > 0 ? "+" : "-") + ") has no real D_est and is excluded");
        continue;
      }
      f.d_min = any ? std::min(f.d_min, *d) : *d;
      f.d_max = any ? std::max(f.d_max, *d) : *d;
      any = true;
    }
  if (!any) {
    f.warnings.push_back("no corner admits a real D_est; interval collapsed to d_est");
    f.d_min = f.d_max = f.d_est;
  }
  return f;
}

double cpu_time_forecast(std::span<const DmrgPoint> points, double target_d) {
  if (!(target_d > 0.0) || !std::isfinite(target_d))
    throw ValidationError("target bond dimension must be positive");
  const DmrgPoint* ref = nullptr;
  for (const auto& p : points)
    if (p.cpu_hours && (!ref || p.bond_dimension > ref->bond_dimension)) ref = &p;
  if (!ref) throw ValidationError("no timing data: cpu_hours is absent from every point");
  if (ref->bond_dimension < 1) throw ValidationError("reference bond_dimension must be >= 1");
  const double ratio = target_d / static_cast<double>(ref->bond_dimension);
  return *ref->cpu_hours * ratio * ratio * ratio;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

[[noreturn]] void csv_fail(std::string_view source, std::size_t line, const std::string& what) {
  throw ValidationError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class ColumnReader {
 public:
  ColumnReader(std::string_view source, const text::CsvRecord& header,
               const std::vector<std::string>& required, const std::vector<std::string>& optional)
      : source_(source) {
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
      const auto& name = header.fields[i];
      const bool known = std::count(required.begin(), required.end(), name) ||
                         std::count(optional.begin(), optional.end(), name);
      if (!known) csv_fail(source, header.line, "unknown column '" + name + "'");
      if (!index_.emplace(name, i).second)
        csv_fail(source, header.line, "duplicate column '" + name + "'");
    }
    for (const auto& name : required)
      if (!index_.count(name)) csv_fail(source, header.line, "missing column '" + name + "'");
    width_ = header.fields.size();
  }

  void check_width(const text::CsvRecord& rec) const {
    if (rec.fields.size() != width_)
      csv_fail(source_, rec.line,
               "expected " + std::to_string(width_) + " fields, got " +
                   std::to_string(rec.fields.size()));
  }

  std::optional<std::string> cell(const text::CsvRecord& rec, const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end() || rec.fields[it->second].empty()) return std::nullopt;
    return rec.fields[it->second];
  }

  std::optional<double> real(const text::CsvRecord& rec, const std::string& name) const {
    auto c = cell(rec, name);
    if (!c) return std::nullopt;
    double v = 0;
    if (!text::parse_double(*c, v)) csv_fail(source_, rec.line, "column '" + name + "' is not a number");
    return v;
  }

  double required_real(const text::CsvRecord& rec, const std::string& name) const {
    auto v = real(rec, name);
    if (!v) csv_fail(source_, rec.line, "column '" + name + "' is empty");
    return *v;
  }

  long long required_int(const text::CsvRecord& rec, const std::string& name) const {
    auto c = cell(rec, name);
    long long v = 0;
    if (!c || !text::parse_int(*c, v))
      csv_fail(source_, rec.line, "column '" + name + "' must be an integer");
    return v;
  }

 private:
  std::string_view source_;
  std::map<std::string, std::size_t> index_;
  std::size_t width_ = 0;
};

std::string optional_cell(const std::optional<double>& v) {
  return v ? text::shortest(*v) : std::string();
}

}  // namespace

std::vector<DmrgPoint> parse_dmrg_series(std::string_view text, std::string_view source) {
  const auto records = text::read_csv(text);
  if (records.empty()) throw ValidationError(std::string(source) + ": empty series");
  ColumnReader cols(source, records.front(), {"bond_dimension", "energy", "truncated_weight"},
                    {"cpu_hours"});
  std::vector<DmrgPoint> points;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    cols.check_width(rec);
    DmrgPoint p;
    p.bond_dimension = cols.required_int(rec, "bond_dimension");
    p.energy = cols.required_real(rec, "energy");
    p.truncated_weight = cols.required_real(rec, "truncated_weight");
    p.cpu_hours = cols.real(rec, "cpu_hours");
    try {
      check_points(std::span(&p, 1));
    } catch (const ValidationError& e) {
      csv_fail(source, rec.line, std::string(e.what()).substr(std::string("point 0: ").size()));
    }
    points.push_back(p);
  }
  if (points.empty()) throw ValidationError(std::string(source) + ": empty series (header only)");
  return points;
}

std::vector<DmrgPoint> load_dmrg_series(const std::filesystem::path& path) {
  return parse_dmrg_series(slurp(path), path.string());
}

std::optional<double> DmrgSummaryRow::forecast_cpu_hours() const {
  if (!cpu_hours) return std::nullopt;
  DmrgPoint ref{bond_dimension, energy, 0.0, cpu_hours};
  return cpu_time_forecast(std::span(&ref, 1), d_est);
}

DmrgSummaryRow summarize_series(std::string molecule_id, int n_orbitals,
                                std::span<const DmrgPoint> points, double delta) {
  const auto energy = fit_energy_extrapolation(points);
  const auto bond = fit_bond_dimension(points, energy.e_est, delta);
  const auto largest = std::max_element(
      points.begin(), points.end(),
      [](const DmrgPoint& l, const DmrgPoint& r) { return l.bond_dimension < r.bond_dimension; });

  DmrgSummaryRow row;
  row.molecule_id = std::move(molecule_id);
  row.n_orbitals = n_orbitals;
  row.bond_dimension = largest->bond_dimension;
  row.energy = largest->energy;
  for (const auto& p : points)
    if (p.bond_dimension == largest->bond_dimension && p.cpu_hours) row.cpu_hours = p.cpu_hours;
  row.e_est = energy.e_est;
  row.e_est_ci95 = energy.e_est_ci95;
  row.d_est = bond.d_est;
  row.d_min = bond.d_min;
  row.d_max = bond.d_max;
  return row;
}

std::vector<DmrgSummaryRow> parse_dmrg_summary(std::string_view text, std::string_view source) {
  const auto records = text::read_csv(text);
  if (records.empty()) throw ValidationError(std::string(source) + ": empty summary");
  ColumnReader cols(source, records.front(),
                    {"molecule_id", "N_o", "bond_dimension", "energy", "e_est", "d_est", "d_min",
                     "d_max"},
                    {"cpu_hours", "e_est_ci95"});
  std::vector<DmrgSummaryRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    cols.check_width(rec);
    DmrgSummaryRow r;
    r.molecule_id = cols.cell(rec, "molecule_id").value_or("");
    if (r.molecule_id.empty()) csv_fail(source, rec.line, "column 'molecule_id' is empty");
    r.n_orbitals = static_cast<int>(cols.required_int(rec, "N_o"));
    r.bond_dimension = cols.required_int(rec, "bond_dimension");
    r.energy = cols.required_real(rec, "energy");
    r.cpu_hours = cols.real(rec, "cpu_hours");
    r.e_est = cols.required_real(rec, "e_est");
    r.e_est_ci95 = cols.real(rec, "e_est_ci95");
    r.d_est = cols.required_real(rec, "d_est");
    r.d_min = cols.required_real(rec, "d_min");
    r.d_max = cols.required_real(rec, "d_max");
    if (r.n_orbitals < 0 || r.bond_dimension < 1)
      csv_fail(source, rec.line, "need N_o >= 0 and bond_dimension >= 1");
    if (!(r.d_est > 0.0) || !(r.d_min <= r.d_max))
      csv_fail(source, rec.line, "need d_est > 0 and d_min <= d_max");
    if (r.cpu_hours && !(*r.cpu_hours >= 0.0))
      csv_fail(source, rec.line, "cpu_hours must be >= 0");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<DmrgSummaryRow> load_dmrg_summary(const std::filesystem::path& path) {
  return parse_dmrg_summary(slurp(path), path.string());
}

void write_dmrg_summary_csv(std::ostream& os, const std::vector<DmrgSummaryRow>& rows) {
  os << "molecule_id,N_o,bond_dimension,energy,cpu_hours,e_est,e_est_ci95,d_est,d_min,d_max\n";
  for (const auto& r : rows)
    os << text::csv_field(r.molecule_id) << ',' << r.n_orbitals << ',' << r.bond_dimension << ','
       << text::shortest(r.energy) << ',' << optional_cell(r.cpu_hours) << ','
       << text::shortest(r.e_est) << ',' << optional_cell(r.e_est_ci95) << ','
       << text::shortest(r.d_est) << ',' << text::shortest(r.d_min) << ','
       << text::shortest(r.d_max) << '\n';
}

void write_dmrg_summary_table(std::ostream& os, const std::vector<DmrgSummaryRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    std::string energy = text::fixed(r.e_est, 4);
    if (r.e_est_ci95) energy += " +- " + text::fixed(*r.e_est_ci95, 4);
    const auto forecast = r.forecast_cpu_hours();
    cells.push_back({r.molecule_id, std::to_string(r.n_orbitals), std::to_string(r.bond_dimension),
                     text::fixed(r.energy, 4), r.cpu_hours ? text::fixed(*r.cpu_hours, 2) : "-",
                     energy,
                     text::fixed(r.d_est, 0) + " [" + text::fixed(r.d_min, 0) + ", " +
                         text::fixed(r.d_max, 0) + "]",
                     forecast ? text::fixed(*forecast, 0) : "-"});
  }
  os << text::aligned_table({"Molecule ID", "N_o", "D", "Energy (Eh)", "CPU (hr)",
                             "Extrapolated energy (Eh)", "D_est [min, max]", "Forecast CPU (hr)"},
                            cells);
}

}  // namespace qre
