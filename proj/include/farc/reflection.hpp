#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "farc/dielectric.hpp"

namespace farc {

enum class MaterialClass { NonMetallic, Metallic };

std::string_view to_string(MaterialClass cls);
/// Accepts "nonmetallic"/"non-metallic"/"metallic" (case-insensitive).
MaterialClass parse_material_class(std::string_view text);

/// Classical Fresnel inputs: real relative permittivity (or a perfect
/// conductor) plus surface-roughness standard deviation in meters.
class MaterialSurface {
 public:
  static MaterialSurface dielectric(double permittivity, double roughness_sigma);
  static MaterialSurface perfect_conductor(double roughness_sigma);

  bool is_perfect_conductor() const { return !permittivity_; }
  /// Empty for a perfect conductor.
  std::optional<double> permittivity() const { return permittivity_; }
  double roughness_sigma() const { return sigma_; }

 private:
  MaterialSurface(std::optional<double> permittivity, double sigma)
      : permittivity_(permittivity), sigma_(sigma) {}
  std::optional<double> permittivity_;
  double sigma_;
};

struct IncidenceGeometry {
  double theta_deg;      // [0, 90)
  double frequency_ghz;  // > 0
};

void validate(const IncidenceGeometry& geom);

struct ReflectionCoefficient {
  Complex value;
  double magnitude() const { return std::abs(value); }
};

/// Fitted statistical model constants. `c` is present iff the class is
/// NonMetallic; frequencies enter the model as raw GHz numerals.
struct StatFarcParams {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> c;
  double d = 0.0;
  MaterialClass material_class = MaterialClass::NonMetallic;

  static StatFarcParams non_metallic(double a, double b, double c, double d) {
    return {a, b, c, d, MaterialClass::NonMetallic};
  }
  static StatFarcParams metallic(double a, double b, double d) {
    return {a, b, std::nullopt, d, MaterialClass::Metallic};
  }
};

void validate(const StatFarcParams& params);

/// Physical FARC parameters. Dielectric angular quantities are in rad/ns so
/// that omega = 2*pi*f with f in GHz.
struct PhysicalFarcParams {
  double roughness_sigma;  // meters
  std::variant<LorenzParams, DrudeParams> dielectric;
};

/// Square root with non-negative real part; on the branch cut (negative real
/// radicand) the root with non-negative imaginary part is returned.
Complex principal_sqrt(Complex z);

/// exp(-8 (pi sigma cos(theta) / lambda)^2), lambda = c / f.
double roughness_factor(double sigma, double theta_deg, double frequency_ghz);

/// Smooth-surface term (cos t - sqrt(eps - sin^2 t)) / (cos t + sqrt(eps - sin^2 t)).
Complex fresnel_smooth(Complex permittivity, double theta_deg);

ReflectionCoefficient fresnel_reflection(const MaterialSurface& surface,
                                         const IncidenceGeometry& geom);

ReflectionCoefficient farc_nonmetallic(const LorenzParams& lorenz, double sigma,
                                       const IncidenceGeometry& geom);
ReflectionCoefficient farc_metallic(const DrudeParams& drude, double sigma,
                                    const IncidenceGeometry& geom);
ReflectionCoefficient farc_physical(const PhysicalFarcParams& params,
                                    const IncidenceGeometry& geom);

ReflectionCoefficient statfarc_eval(const StatFarcParams& params, double theta_deg,
                                    double f_ghz);

/// a = lg(8 pi^2 sigma^2 / c^2) + 18, b = lg(wp^2 / 2 pi gamma),
/// c = lg(w0^2 / 2 pi gamma), d = 2 pi / gamma. Requires sigma > 0.
StatFarcParams map_physical_to_statistical(double sigma, const LorenzParams& lorenz);
StatFarcParams map_physical_to_statistical(double sigma, const DrudeParams& drude);
StatFarcParams map_physical_to_statistical(const PhysicalFarcParams& params);

/// Exact inverse of map_physical_to_statistical. Requires d > 0.
PhysicalFarcParams recover_physical_params(const StatFarcParams& params);

}  // namespace farc
