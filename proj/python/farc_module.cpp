#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "farc/cli.hpp"
#include "farc/dielectric.hpp"
#include "farc/fitting.hpp"
#include "farc/materials.hpp"
#include "farc/measurement.hpp"
#include "farc/reflection.hpp"
#include "farc/report_json.hpp"

namespace py = pybind11;
using namespace farc;

PYBIND11_MODULE(_farc, m) {
  m.doc() = "Frequency-angle reflection coefficient models (C++ core)";

  py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);

  py::enum_<MaterialClass>(m, "MaterialClass")
      .value("NonMetallic", MaterialClass::NonMetallic)
      .value("Metallic", MaterialClass::Metallic);

  py::class_<LorenzParams>(m, "LorenzParams")
      .def(py::init<double, double, double>(), py::arg("omega_p_sq"), py::arg("omega_0"),
           py::arg("gamma"))
      .def_readwrite("omega_p_sq", &LorenzParams::omega_p_sq)
      .def_readwrite("omega_0", &LorenzParams::omega_0)
      .def_readwrite("gamma", &LorenzParams::gamma);

  py::class_<DrudeParams>(m, "DrudeParams")
      .def(py::init<double, double>(), py::arg("omega_p_sq"), py::arg("gamma"))
      .def_readwrite("omega_p_sq", &DrudeParams::omega_p_sq)
      .def_readwrite("gamma", &DrudeParams::gamma);

  m.def("plasma_frequency_sq", &plasma_frequency_sq, py::arg("electron_density"));
  m.def("lorenz_permittivity", &lorenz_permittivity, py::arg("params"), py::arg("omega"));
  m.def("drude_permittivity", &drude_permittivity, py::arg("params"), py::arg("omega"));

  py::class_<StatFarcParams>(m, "StatFarcParams")
      .def_static("non_metallic", &StatFarcParams::non_metallic, py::arg("a"), py::arg("b"),
                  py::arg("c"), py::arg("d"))
      .def_static("metallic", &StatFarcParams::metallic, py::arg("a"), py::arg("b"), py::arg("d"))
      .def_readwrite("a", &StatFarcParams::a)
      .def_readwrite("b", &StatFarcParams::b)
      .def_readwrite("c", &StatFarcParams::c)
      .def_readwrite("d", &StatFarcParams::d)
      .def_readwrite("material_class", &StatFarcParams::material_class)
      .def("__repr__", [](const StatFarcParams& p) { return params_to_json(p).dump(); });

  py::class_<PhysicalFarcParams>(m, "PhysicalFarcParams")
      .def_readwrite("roughness_sigma", &PhysicalFarcParams::roughness_sigma)
      .def_readwrite("dielectric", &PhysicalFarcParams::dielectric);

  m.def("roughness_factor", &roughness_factor, py::arg("sigma"), py::arg("theta_deg"),
        py::arg("frequency_ghz"));
  m.def(
      "fresnel_reflection",
      [](std::optional<double> permittivity, double sigma, double theta_deg, double f_ghz) {
        const auto surface = permittivity ? MaterialSurface::dielectric(*permittivity, sigma)
                                          : MaterialSurface::perfect_conductor(sigma);
        return fresnel_reflection(surface, {theta_deg, f_ghz}).value;
      },
      py::arg("permittivity"), py::arg("sigma"), py::arg("theta_deg"), py::arg("frequency_ghz"),
      "Rough-surface Fresnel coefficient; permittivity=None is a perfect conductor.");
  m.def(
      "farc_nonmetallic",
      [](const LorenzParams& p, double sigma, double theta, double f) {
        return farc_nonmetallic(p, sigma, {theta, f}).value;
      },
      py::arg("lorenz"), py::arg("sigma"), py::arg("theta_deg"), py::arg("frequency_ghz"));
  m.def(
      "farc_metallic",
      [](const DrudeParams& p, double sigma, double theta, double f) {
        return farc_metallic(p, sigma, {theta, f}).value;
      },
      py::arg("drude"), py::arg("sigma"), py::arg("theta_deg"), py::arg("frequency_ghz"));
  m.def(
      "statfarc_eval",
      [](const StatFarcParams& p, double theta, double f) { return statfarc_eval(p, theta, f).value; },
      py::arg("params"), py::arg("theta_deg"), py::arg("frequency_ghz"));
  m.def("map_physical_to_statistical",
        py::overload_cast<double, const LorenzParams&>(&map_physical_to_statistical),
        py::arg("sigma"), py::arg("dielectric"));
  m.def("map_physical_to_statistical",
        py::overload_cast<double, const DrudeParams&>(&map_physical_to_statistical),
        py::arg("sigma"), py::arg("dielectric"));
  m.def("recover_physical_params", &recover_physical_params, py::arg("params"));

  m.def(
      "gamma_from_powers",
      [](double f, double theta, double p_r, double p_ref, double d_t, double d_r, double d_ref) {
        return gamma_from_powers({f, theta, p_r, p_ref, d_t, d_r, d_ref}).gamma_mag;
      },
      py::arg("frequency_ghz"), py::arg("theta_deg"), py::arg("p_r"), py::arg("p_ref"),
      py::arg("d_t") = 0.05, py::arg("d_r") = 0.05, py::arg("d_ref") = 0.10);
  m.def("measurement_grid", [] {
    const Grid g = measurement_grid();
    return py::make_tuple(g.frequencies_ghz, g.angles_deg);
  });

  py::class_<ReflectionSample>(m, "ReflectionSample")
      .def_readonly("frequency_ghz", &ReflectionSample::frequency_ghz)
      .def_readonly("theta_deg", &ReflectionSample::theta_deg)
      .def_readonly("gamma_mag", &ReflectionSample::gamma_mag);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("material_name", &Dataset::material_name)
      .def_property_readonly("material_class", &Dataset::material_class)
      .def_property_readonly("samples", &Dataset::samples)
      .def("__len__", &Dataset::size)
      .def("to_csv", [](const Dataset& ds) {
        std::ostringstream os;
        write_samples_csv(os, ds.samples());
        return os.str();
      });

  m.def(
      "load_dataset",
      [](const std::string& csv, MaterialClass cls, bool permissive, const std::string& name) {
        std::istringstream in(csv);
        LoadOptions options;
        options.mode = permissive ? GridMode::Permissive : GridMode::Strict;
        options.material_name = name;
        return load_dataset(in, cls, options);
      },
      py::arg("csv_text"), py::arg("material_class"), py::arg("permissive") = false,
      py::arg("material_name") = "unnamed");
  m.def(
      "average_over_angles",
      [](const Dataset& ds, bool permissive) {
        std::vector<std::pair<double, double>> out;
        for (const auto& a :
             average_over_angles(ds, permissive ? GridMode::Permissive : GridMode::Strict))
          out.emplace_back(a.frequency_ghz, a.mean_gamma);
        return out;
      },
      py::arg("dataset"), py::arg("permissive") = false);

  m.def("rmse", &rmse, py::arg("params"), py::arg("dataset"));
  m.def(
      "synth_dataset",
      [](const StatFarcParams& p, double noise_std, std::uint64_t seed, const std::string& name) {
        return synth_dataset(p, measurement_grid(), noise_std, seed, name);
      },
      py::arg("params"), py::arg("noise_std") = 0.0, py::arg("seed") = 0,
      py::arg("material_name") = "synthetic", "Synthetic dataset on the measurement grid.");
  m.def(
      "fit_statfarc",
      [](const Dataset& ds, std::uint64_t seed, int grid_points_per_dim) {
        FitConfig config;
        config.seed = seed;
        config.grid_points_per_dim = grid_points_per_dim;
        const auto report = [&] {
          py::gil_scoped_release release;
          return fit_statfarc(ds, config);
        }();
        return py::module_::import("json").attr("loads")(
            to_json(report, ds.material_class()).dump());
      },
      py::arg("dataset"), py::arg("seed") = 0, py::arg("grid_points_per_dim") = 3,
      "Returns the fit report as a dict.");

  m.def("materials", [] {
    return py::module_::import("json").attr("loads")([] {
      nlohmann::json doc = nlohmann::json::array();
      for (const auto& e : material_library()) doc.push_back(to_json(e));
      return doc.dump();
    }());
  });
  m.def("material_params", [](const std::string& name) {
    const auto* e = find_material(name);
    if (!e) throw py::key_error("unknown material '" + name + "'");
    return e->fitted;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
