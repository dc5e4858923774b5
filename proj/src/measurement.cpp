#include "farc/measurement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace farc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

struct CsvRow {
  std::size_t line;
  std::vector<double> values;  // ordered as the requested columns
};

// Reads a headed CSV, projecting the named columns. Comment lines start
// with '#'; blank lines are skipped. Collects issues instead of stopping
// at the first bad row.
std::vector<CsvRow> read_columns(std::istream& in, const std::vector<std::string>& columns,
                                 std::vector<DatasetIssue>& issues) {
  std::vector<CsvRow> rows;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::size_t> index;
  std::size_t header_width = 0;
  bool have_header = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);

    if (!have_header) {
      have_header = true;
      header_width = fields.size();
      for (const auto& name : columns) {
        const auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end()) {
          issues.push_back({line_no, DatasetIssueKind::MissingColumn,
                            "missing required column '" + name + "'"});
        } else {
          index.push_back(static_cast<std::size_t>(it - fields.begin()));
        }
      }
      if (!issues.empty()) return rows;
      continue;
    }

    if (fields.size() != header_width) {
      issues.push_back({line_no, DatasetIssueKind::Parse,
                        "expected " + std::to_string(header_width) + " fields, found " +
                            std::to_string(fields.size())});
      continue;
    }
    CsvRow row{line_no, {}};
    bool ok = true;
    for (std::size_t k = 0; k < index.size(); ++k) {
      const auto field = fields[index[k]];
      const auto value = parse_double(field);
      if (!value || !std::isfinite(*value)) {
        issues.push_back({line_no, DatasetIssueKind::Parse,
                          "column '" + columns[k] + "': cannot parse '" + std::string(field) +
                              "' as a finite number"});
        ok = false;
        break;
      }
      row.values.push_back(*value);
    }
    if (ok) rows.push_back(std::move(row));
  }
  if (!have_header)
    issues.push_back({0, DatasetIssueKind::MissingColumn, "input has no header row"});
  return rows;
}

bool near(double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y)); }

std::optional<double> snap(double value, const std::vector<double>& axis) {
  for (double g : axis)
    if (near(value, g)) return g;
  return std::nullopt;
}

std::string describe(const ReflectionSample& s) {
  return "(" + format_number(s.frequency_ghz, 9) + " GHz, " + format_number(s.theta_deg, 9) +
         " deg)";
}

// Dataset construction shared by load_dataset and the public constructor.
// `lines` maps each sample to its source line (0 if none).
void check_samples(std::vector<ReflectionSample>& samples, const std::vector<std::size_t>& lines,
                   const Grid& grid, GridMode mode, std::vector<DatasetIssue>& issues) {
  std::map<std::pair<double, double>, std::size_t> seen;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& s = samples[i];
    const std::size_t line = i < lines.size() ? lines[i] : 0;
    if (!std::isfinite(s.gamma_mag) || s.gamma_mag < 0.0) {
      issues.push_back({line, DatasetIssueKind::InvalidValue,
                        "gamma_mag must be finite and >= 0 at " + describe(s)});
      continue;
    }
    if (mode == GridMode::Strict) {
      const auto f = snap(s.frequency_ghz, grid.frequencies_ghz);
      const auto t = snap(s.theta_deg, grid.angles_deg);
      if (!f || !t) {
        issues.push_back({line, DatasetIssueKind::OffGrid,
                          "sample " + describe(s) + " is not on the declared grid"});
        continue;
      }
      s.frequency_ghz = *f;
      s.theta_deg = *t;
    }
    const auto key = std::make_pair(s.frequency_ghz, s.theta_deg);
    const auto [it, inserted] = seen.emplace(key, line);
    if (!inserted) {
      std::string msg = "duplicate sample " + describe(s);
      if (it->second != 0) msg += " (first seen on line " + std::to_string(it->second) + ")";
      issues.push_back({line, DatasetIssueKind::DuplicateKey, msg});
    }
  }
}

Grid observed_grid(const std::vector<ReflectionSample>& samples) {
  std::set<double> freqs, angles;
  for (const auto& s : samples) {
    freqs.insert(s.frequency_ghz);
    angles.insert(s.theta_deg);
  }
  return {{freqs.begin(), freqs.end()}, {angles.begin(), angles.end()}};
}

std::string summarize(const std::vector<DatasetIssue>& issues) {
  std::ostringstream os;
  os << issues.size() << " dataset issue(s)";
  for (const auto& issue : issues) {
    os << "\n  ";
    if (issue.line) os << "line " << issue.line << ": ";
    os << issue.message;
  }
  return os.str();
}

}  // namespace

DatasetError::DatasetError(std::vector<DatasetIssue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

std::string format_number(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ReflectionSample gamma_from_powers(const PowerRecord& r, const WarningSink& warn) {
  if (!(r.p_ref > 0.0)) throw std::domain_error("gamma_from_powers: p_ref must be > 0");
  if (!(r.p_r >= 0.0)) throw std::domain_error("gamma_from_powers: p_r must be >= 0");
  if (!(r.d_t > 0.0 && r.d_r > 0.0 && r.d_ref > 0.0))
    throw std::domain_error("gamma_from_powers: distances must be > 0");
  const ReflectionSample sample{r.frequency_ghz, r.theta_deg,
                                (r.d_t + r.d_r) / r.d_ref * std::sqrt(r.p_r / r.p_ref)};
  if (sample.exceeds_unity() && warn)
    warn("|Gamma| = " + format_number(sample.gamma_mag, 6) + " exceeds 1 at " +
         describe(sample) + "; sample kept");
  return sample;
}

Grid measurement_grid() {
  Grid grid;
  for (int f = 220; f <= 320; f += 10)
    if (f != 270 && f != 310) grid.frequencies_ghz.push_back(f);
  for (int t = 10; t <= 80; t += 10) grid.angles_deg.push_back(t);
  return grid;
}

Dataset::Dataset(std::string material_name, MaterialClass material_class,
                 std::vector<ReflectionSample> samples, Grid grid, GridMode mode)
    : name_(std::move(material_name)), class_(material_class), samples_(std::move(samples)) {
  std::vector<DatasetIssue> issues;
  check_samples(samples_, {}, grid, mode, issues);
  if (!issues.empty()) throw DatasetError(std::move(issues));
  grid_ = mode == GridMode::Strict ? std::move(grid) : observed_grid(samples_);
}

Dataset load_dataset(std::istream& in, MaterialClass material_class, const LoadOptions& options) {
  std::vector<DatasetIssue> issues;
  const auto rows = read_columns(in, {"frequency_ghz", "theta_deg", "gamma_mag"}, issues);
  std::vector<ReflectionSample> samples;
  std::vector<std::size_t> lines;
  for (const auto& row : rows) {
    samples.push_back({row.values[0], row.values[1], row.values[2]});
    lines.push_back(row.line);
  }
  check_samples(samples, lines, options.grid, options.mode, issues);
  if (!issues.empty()) {
    std::stable_sort(issues.begin(), issues.end(),
                     [](const auto& x, const auto& y) { return x.line < y.line; });
    throw DatasetError(std::move(issues));
  }
  // Samples are already checked; the constructor re-validates cheaply.
  return Dataset(options.material_name, material_class, std::move(samples), options.grid,
                 options.mode);
}

void write_samples_csv(std::ostream& out, const std::vector<ReflectionSample>& samples) {
  out << "frequency_ghz,theta_deg,gamma_mag\n";
  for (const auto& s : samples)
    out << format_number(s.frequency_ghz, 9) << ',' << format_number(s.theta_deg, 9) << ','
        << format_number(s.gamma_mag, 9) << '\n';
}

std::vector<PowerRecord> load_power_records(std::istream& in, bool powers_in_db) {
  std::vector<DatasetIssue> issues;
  const auto rows = read_columns(
      in, {"frequency_ghz", "theta_deg", "p_r", "p_ref", "d_t_m", "d_r_m", "d_ref_m"}, issues);
  std::vector<PowerRecord> records;
  for (const auto& row : rows) {
    const auto& v = row.values;
    PowerRecord r{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    if (powers_in_db) {
      r.p_r = db_to_linear(r.p_r);
      r.p_ref = db_to_linear(r.p_ref);
    }
    if (!(r.p_r >= 0.0) || !(r.p_ref > 0.0) || !(r.d_t > 0.0) || !(r.d_r > 0.0) ||
        !(r.d_ref > 0.0)) {
      issues.push_back({row.line, DatasetIssueKind::InvalidValue,
                        "powers must satisfy p_r >= 0, p_ref > 0 and distances must be > 0"});
      continue;
    }
    records.push_back(r);
  }
  if (!issues.empty()) throw DatasetError(std::move(issues));
  return records;
}

std::vector<AngleAverage> average_over_angles(const Dataset& dataset, GridMode mode) {
  std::map<double, std::pair<double, std::size_t>> groups;
  for (const auto& s : dataset.samples()) {
    auto& [sum, count] = groups[s.frequency_ghz];
    sum += s.gamma_mag;
    ++count;
  }

  if (mode == GridMode::Strict) {
    std::vector<DatasetIssue> issues;
    const auto& grid = dataset.grid();
    for (double f : grid.frequencies_ghz) {
      const auto it = groups.find(f);
      const std::size_t have = it == groups.end() ? 0 : it->second.second;
      if (have != grid.angles_deg.size())
        issues.push_back({0, DatasetIssueKind::OffGrid,
                          "frequency " + format_number(f, 9) + " GHz has " +
                              std::to_string(have) + " of " +
                              std::to_string(grid.angles_deg.size()) + " angles"});
    }
    if (!issues.empty()) throw DatasetError(std::move(issues));
  }

  std::vector<AngleAverage> out;
  for (const auto& [f, acc] : groups)
    out.push_back({f, acc.first / static_cast<double>(acc.second), acc.second});
  return out;
}

}  // namespace farc
