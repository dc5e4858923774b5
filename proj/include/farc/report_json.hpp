#pragma once

#include <json.hpp>

#include "farc/fitting.hpp"
#include "farc/materials.hpp"

namespace farc {

nlohmann::json params_to_json(const StatFarcParams& params);

/// {material, class, params{a,b,c,d}, rmse, n_samples, converged,
///  starts_tried, iterations, residuals[]}; c is null for metallic fits.
nlohmann::json to_json(const FitReport& report, MaterialClass cls);

nlohmann::json to_json(const MaterialLibraryEntry& entry);

}  // namespace farc
