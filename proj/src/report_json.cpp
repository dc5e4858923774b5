#include "farc/report_json.hpp"

namespace farc {

nlohmann::json params_to_json(const StatFarcParams& p) {
  nlohmann::json out = {{"a", p.a}, {"b", p.b}, {"c", nullptr}, {"d", p.d}};
  if (p.c) out["c"] = *p.c;
  return out;
}

nlohmann::json to_json(const FitReport& report, MaterialClass cls) {
  return {
      {"material", report.material},
      {"class", std::string(to_string(cls))},
      {"params", params_to_json(report.params)},
      {"rmse", report.rmse},
      {"n_samples", report.residuals.size()},
      {"converged", report.converged},
      {"starts_tried", report.starts_tried},
      {"iterations", report.iterations},
      {"residuals", report.residuals},
  };
}

nlohmann::json to_json(const MaterialLibraryEntry& entry) {
  nlohmann::json out = {
      {"name", entry.name},
      {"class", std::string(to_string(entry.material_class))},
      {"permittivity", nullptr},
      {"perfect_conductor", !entry.permittivity.has_value()},
      {"roughness_sigma_um", entry.roughness_sigma_um},
      {"fitted", params_to_json(entry.fitted)},
      {"fitted_rmse", entry.fitted_rmse},
  };
  if (entry.permittivity) out["permittivity"] = *entry.permittivity;
  return out;
}

}  // namespace farc
