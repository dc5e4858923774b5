#include "farc/materials.hpp"

#include <array>
#include <cctype>

namespace farc {
namespace {

const std::array<MaterialLibraryEntry, 5>& entries() {
  static const std::array<MaterialLibraryEntry, 5> table{{
      {"glass", MaterialClass::NonMetallic, 3.5, 0.006,
       StatFarcParams::non_metallic(-15.45, 3.93, 3.97, 0.06), 0.11},
      {"tile", MaterialClass::NonMetallic, 5.5, 0.050,
       StatFarcParams::non_metallic(-15.18, 3.96, 3.72, 0.02), 0.12},
      {"board", MaterialClass::NonMetallic, 2.8, 4.800,
       StatFarcParams::non_metallic(-15.30, 3.89, 4.04, 0.03), 0.10},
      {"plasterboard", MaterialClass::NonMetallic, 1.8, 2.200,
       StatFarcParams::non_metallic(-15.66, 3.57, 4.33, 0.10), 0.08},
      {"aluminium alloy", MaterialClass::Metallic, std::nullopt, 4.000,
       StatFarcParams::metallic(-15.31, 6.26, 0.002), 0.16},
  }};
  return table;
}

std::string normalize(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (ch == '-' || ch == '_') ch = ' ';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace

MaterialSurface MaterialLibraryEntry::surface() const {
  const double sigma_m = roughness_sigma_um * 1e-6;
  return permittivity ? MaterialSurface::dielectric(*permittivity, sigma_m)
                      : MaterialSurface::perfect_conductor(sigma_m);
}

std::span<const MaterialLibraryEntry> material_library() { return entries(); }

const MaterialLibraryEntry* find_material(std::string_view name) {
  std::string key = normalize(name);
  if (key == "aluminium" || key == "aluminum" || key == "aluminum alloy") key = "aluminium alloy";
  for (const auto& entry : entries())
    if (entry.name == key) return &entry;
  return nullptr;
}

}  // namespace farc
