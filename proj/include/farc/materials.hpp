#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "farc/reflection.hpp"

namespace farc {

/// Bundled reference values for one building material: classical Fresnel
/// properties and the fitted statistical FARC parameters.
struct MaterialLibraryEntry {
  std::string name;
  MaterialClass material_class;
  std::optional<double> permittivity;  // empty = perfect conductor
  double roughness_sigma_um;
  StatFarcParams fitted;
  double fitted_rmse;  // reported for the measured data, not reproducible here

  MaterialSurface surface() const;
};

/// glass, tile, board, plasterboard, aluminium alloy.
std::span<const MaterialLibraryEntry> material_library();

/// Case-insensitive; spaces, '-' and '_' are interchangeable, and
/// "aluminium"/"aluminum" resolve to aluminium alloy.
const MaterialLibraryEntry* find_material(std::string_view name);

}  // namespace farc
