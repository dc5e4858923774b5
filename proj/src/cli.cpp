#include "farc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "farc/fitting.hpp"
#include "farc/materials.hpp"
#include "farc/measurement.hpp"
#include "farc/reflection.hpp"
#include "farc/report_json.hpp"

namespace farc::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Model = std::function<ReflectionCoefficient(double theta_deg, double f_ghz)>;

struct ModelOptions {
  std::string model = "statfarc";
  std::string material;
  std::string material_class;
  std::optional<double> a, b, c, d;
  std::optional<double> permittivity;
  bool perfect_conductor = false;
  double sigma_um = 0.0;
  std::optional<double> omega_p_sq, omega_0, gamma;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--model", model, "Model: fresnel, farc or statfarc")
        ->check(CLI::IsMember({"fresnel", "farc", "statfarc"}));
    cmd.add_option("--material", material, "Bundled material (see `farc materials`)");
    cmd.add_option("--class", material_class, "nonmetallic or metallic (explicit parameters)");
    cmd.add_option("--a", a, "statfarc: roughness exponent");
    cmd.add_option("--b", b, "statfarc: oscillator-strength exponent");
    cmd.add_option("--c", c, "statfarc: resonance exponent (non-metallic only)");
    cmd.add_option("--d", d, "statfarc: damping scale (> 0)");
    cmd.add_option("--permittivity", permittivity, "fresnel: real relative permittivity (>= 1)");
    cmd.add_flag("--perfect-conductor", perfect_conductor, "fresnel: perfect conductor surface");
    cmd.add_option("--sigma-um", sigma_um, "fresnel/farc: surface roughness sigma in micrometers");
    cmd.add_option("--omega-p-sq", omega_p_sq, "farc: squared plasma frequency, (rad/ns)^2");
    cmd.add_option("--omega-0", omega_0, "farc: resonant angular frequency, rad/ns");
    cmd.add_option("--gamma", gamma, "farc: damping constant, rad/ns");
  }

  const MaterialLibraryEntry* entry() const {
    if (material.empty()) return nullptr;
    const auto* found = find_material(material);
    if (!found) throw InputError("unknown material '" + material + "'");
    return found;
  }

  MaterialClass explicit_class(bool has_c) const {
    if (!material_class.empty()) return parse_material_class(material_class);
    return has_c ? MaterialClass::NonMetallic : MaterialClass::Metallic;
  }

  Model build() const {
    const auto* lib = entry();
    if (model == "fresnel") {
      MaterialSurface surface = lib ? lib->surface()
                                    : perfect_conductor ? MaterialSurface::perfect_conductor(sigma_um * 1e-6)
                                    : permittivity ? MaterialSurface::dielectric(*permittivity, sigma_um * 1e-6)
                                    : throw InputError("fresnel needs --material, --permittivity or --perfect-conductor");
      return [surface](double t, double f) { return fresnel_reflection(surface, {t, f}); };
    }
    if (model == "statfarc") {
      StatFarcParams p;
      if (lib) {
        p = lib->fitted;
      } else {
        if (!a || !b || !d) throw InputError("statfarc needs --material or --a, --b, --d");
        const auto cls = explicit_class(c.has_value());
        if (cls == MaterialClass::NonMetallic && !c)
          throw InputError("non-metallic statfarc needs --c");
        p = cls == MaterialClass::NonMetallic ? StatFarcParams::non_metallic(*a, *b, *c, *d)
                                              : StatFarcParams::metallic(*a, *b, *d);
      }
      validate(p);
      return [p](double t, double f) { return statfarc_eval(p, t, f); };
    }
    PhysicalFarcParams phys;
    if (lib) {
      phys = recover_physical_params(lib->fitted);
    } else {
      if (!omega_p_sq || !gamma) throw InputError("farc needs --material or --omega-p-sq and --gamma");
      const auto cls = explicit_class(omega_0.has_value());
      phys.roughness_sigma = sigma_um * 1e-6;
      if (cls == MaterialClass::NonMetallic) {
        if (!omega_0) throw InputError("non-metallic farc needs --omega-0");
        phys.dielectric = LorenzParams{*omega_p_sq, *omega_0, *gamma};
      } else {
        phys.dielectric = DrudeParams{*omega_p_sq, *gamma};
      }
    }
    return [phys](double t, double f) { return farc_physical(phys, {t, f}); };
  }
};

void check_geometry(double theta, double freq) {
  if (!(theta >= 0.0 && theta < 90.0)) throw InputError("--theta must lie in [0, 90) degrees");
  if (!(freq > 0.0) || !std::isfinite(freq)) throw InputError("--freq must be > 0 GHz");
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file.flush()) throw IoError("failed writing '" + path + "'");
}

Bounds parse_bounds(const std::string& text, const char* name) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("");
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw InputError(std::string("--bounds-") + name + " expects LOWER:UPPER");
  }
}

// Shortest fixed-point rendering with at least two decimals that parses back
// to the same value, so table entries print as published (0.10, 0.002).
std::string table_number(double v) {
  char buf[64];
  for (int decimals = 2; decimals <= 9; ++decimals) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

}  // namespace

std::vector<double> parse_axis(const std::string& spec) {
  std::vector<double> values;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
      throw InputError("cannot parse '" + s + "' in axis spec '" + spec + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InputError("range '" + spec + "' must be START:STOP:STEP");
    const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw InputError("range '" + spec + "' needs STEP > 0 and STOP >= START");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) values.push_back(number(part));
  }
  if (values.empty()) throw InputError("axis spec '" + spec + "' is empty");
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-angle reflection coefficient models for THz building materials"};
  app.name("farc");
  app.require_subcommand(1);

  // eval
  ModelOptions eval_model;
  double eval_theta = 0.0, eval_freq = 0.0;
  int eval_digits = 6;
  auto* eval = app.add_subcommand("eval", "Evaluate one reflection coefficient");
  eval_model.add_to(*eval);
  eval->add_option("--theta", eval_theta, "Incidence angle, degrees")->required();
  eval->add_option("--freq", eval_freq, "Frequency, GHz")->required();
  eval->add_option("--digits", eval_digits, "Significant digits")->check(CLI::Range(1, 17));

  // sweep
  ModelOptions sweep_model;
  std::string sweep_freqs, sweep_angles, sweep_output = "-";
  auto* sweep = app.add_subcommand("sweep", "Tabulate |Gamma| over a frequency-angle grid");
  sweep_model.add_to(*sweep);
  sweep->add_option("--freqs", sweep_freqs, "GHz axis: START:STOP:STEP or list (default: measurement grid)");
  sweep->add_option("--angles", sweep_angles, "Degree axis: START:STOP:STEP or list (default: 10:80:10)");
  sweep->add_option("-o,--output", sweep_output, "Output CSV path ('-' for stdout)");

  // fit
  std::string fit_input, fit_output = "-", fit_class = "nonmetallic", fit_material;
  std::string bounds_a, bounds_b, bounds_c, bounds_d;
  bool fit_permissive = false;
  FitConfig fit_config;
  auto* fit = app.add_subcommand("fit", "Fit statistical FARC parameters to a samples CSV");
  fit->add_option("input", fit_input, "Samples CSV ('-' for stdin)")->required();
  fit->add_option("--class", fit_class, "nonmetallic or metallic");
  fit->add_option("--material", fit_material, "Material label for the report");
  fit->add_option("-o,--output", fit_output, "Report JSON path ('-' for stdout)");
  fit->add_option("--seed", fit_config.seed, "Multistart jitter seed");
  fit->add_option("--starts-per-dim", fit_config.grid_points_per_dim, "Multistart grid points per parameter");
  fit->add_option("--max-iter", fit_config.max_iterations, "Iteration budget per local search");
  fit->add_option("--tol", fit_config.tolerance, "Convergence tolerance on the mean squared error");
  fit->add_option("--threads", fit_config.threads, "Worker threads (0 = all cores)");
  fit->add_option("--bounds-a", bounds_a, "LOWER:UPPER");
  fit->add_option("--bounds-b", bounds_b, "LOWER:UPPER");
  fit->add_option("--bounds-c", bounds_c, "LOWER:UPPER");
  fit->add_option("--bounds-d", bounds_d, "LOWER:UPPER (LOWER > 0)");
  fit->add_flag("--permissive", fit_permissive, "Accept samples off the measurement grid");

  // convert
  std::string conv_input, conv_output = "-";
  bool conv_db = false;
  auto* convert = app.add_subcommand("convert", "Convert a power CSV into a samples CSV");
  convert->add_option("input", conv_input, "Power CSV ('-' for stdin)")->required();
  convert->add_option("-o,--output", conv_output, "Samples CSV path ('-' for stdout)");
  convert->add_flag("--db", conv_db, "Power columns are in dB");

  // materials
  bool materials_json = false;
  auto* materials = app.add_subcommand("materials", "Print the bundled material tables");
  materials->add_flag("--json", materials_json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (eval->parsed()) {
      check_geometry(eval_theta, eval_freq);
      const auto gamma = eval_model.build()(eval_theta, eval_freq);
      out << "magnitude " << format_number(gamma.magnitude(), eval_digits) << '\n'
          << "real " << format_number(gamma.value.real(), eval_digits) << '\n'
          << "imag " << format_number(gamma.value.imag(), eval_digits) << '\n';
    } else if (sweep->parsed()) {
      const Grid defaults = measurement_grid();
      const auto freqs = sweep_freqs.empty() ? defaults.frequencies_ghz : parse_axis(sweep_freqs);
      const auto angles = sweep_angles.empty() ? defaults.angles_deg : parse_axis(sweep_angles);
      for (double f : freqs)
        for (double t : angles) check_geometry(t, f);
      const Model model = sweep_model.build();
      std::vector<ReflectionSample> rows;
      rows.reserve(freqs.size() * angles.size());
      for (double f : freqs)
        for (double t : angles) rows.push_back({f, t, model(t, f).magnitude()});
      std::ostringstream csv;
      write_samples_csv(csv, rows);
      write_all(sweep_output, csv.str(), out);
    } else if (fit->parsed()) {
      if (!bounds_a.empty()) fit_config.a = parse_bounds(bounds_a, "a");
      if (!bounds_b.empty()) fit_config.b = parse_bounds(bounds_b, "b");
      if (!bounds_c.empty()) fit_config.c = parse_bounds(bounds_c, "c");
      if (!bounds_d.empty()) fit_config.d = parse_bounds(bounds_d, "d");
      const auto cls = parse_material_class(fit_class);
      std::istringstream in(read_all(fit_input));
      LoadOptions options;
      options.mode = fit_permissive ? GridMode::Permissive : GridMode::Strict;
      options.material_name = !fit_material.empty() ? fit_material
                              : fit_input == "-"    ? "stdin"
                                                    : fit_input;
      const Dataset dataset = load_dataset(in, cls, options);
      const FitReport report = fit_statfarc(dataset, fit_config);
      write_all(fit_output, to_json(report, cls).dump(2) + "\n", out);
    } else if (convert->parsed()) {
      std::istringstream in(read_all(conv_input));
      const auto records = load_power_records(in, conv_db);
      std::vector<ReflectionSample> rows;
      const WarningSink warn = [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
      for (const auto& r : records) rows.push_back(gamma_from_powers(r, warn));
      std::ostringstream csv;
      write_samples_csv(csv, rows);
      write_all(conv_output, csv.str(), out);
    } else if (materials->parsed()) {
      if (materials_json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& entry : material_library()) doc.push_back(to_json(entry));
        out << doc.dump(2) << '\n';
      } else {
        out << "material         class        permittivity sigma_um  a        b      c      d      rmse\n";
        char line[256];
        for (const auto& e : material_library()) {
          const std::string perm = e.permittivity ? table_number(*e.permittivity) : "inf";
          const std::string c = e.fitted.c ? table_number(*e.fitted.c) : "-";
          std::snprintf(line, sizeof line, "%-16s %-12s %-12s %-9.3f %-8s %-6s %-6s %-6s %s\n",
                        e.name.c_str(), std::string(to_string(e.material_class)).c_str(),
                        perm.c_str(), e.roughness_sigma_um, table_number(e.fitted.a).c_str(),
                        table_number(e.fitted.b).c_str(), c.c_str(),
                        table_number(e.fitted.d).c_str(), table_number(e.fitted_rmse).c_str());
          out << line;
        }
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kSuccess;
}

}  // namespace farc::cli
