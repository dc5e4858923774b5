#include "farc/reflection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace farc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHzPerGHz = 1e9;
// f enters the statistical roughness term in GHz; 10^a absorbs (1e9)^2.
constexpr double kGHzSquaredExponent = 18.0;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

void require_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("roughness sigma must be finite and >= 0");
}

void require_angle(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg < 90.0))
    throw std::domain_error("incidence angle must lie in [0, 90) degrees");
}

void require_frequency(double f_ghz) {
  if (!(f_ghz > 0.0) || !std::isfinite(f_ghz))
    throw std::domain_error("frequency must be finite and > 0 GHz");
}

Complex rough_fresnel(Complex permittivity, double sigma, const IncidenceGeometry& geom) {
  return roughness_factor(sigma, geom.theta_deg, geom.frequency_ghz) *
         fresnel_smooth(permittivity, geom.theta_deg);
}

}  // namespace

std::string_view to_string(MaterialClass cls) {
  return cls == MaterialClass::Metallic ? "metallic" : "nonmetallic";
}

MaterialClass parse_material_class(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "nonmetallic" || lower == "non-metallic" || lower == "non_metallic")
    return MaterialClass::NonMetallic;
  if (lower == "metallic") return MaterialClass::Metallic;
  throw std::invalid_argument("unknown material class '" + std::string(text) +
                              "' (expected nonmetallic or metallic)");
}

MaterialSurface MaterialSurface::dielectric(double permittivity, double roughness_sigma) {
  if (!(permittivity >= 1.0) || !std::isfinite(permittivity))
    throw std::invalid_argument("permittivity must be finite and >= 1");
  require_sigma(roughness_sigma);
  return MaterialSurface(permittivity, roughness_sigma);
}

MaterialSurface MaterialSurface::perfect_conductor(double roughness_sigma) {
  require_sigma(roughness_sigma);
  return MaterialSurface(std::nullopt, roughness_sigma);
}

void validate(const IncidenceGeometry& geom) {
  require_angle(geom.theta_deg);
  require_frequency(geom.frequency_ghz);
}

void validate(const StatFarcParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b))
    throw std::invalid_argument("statfarc: a and b must be finite");
  if (!(p.d > 0.0) || !std::isfinite(p.d))
    throw std::invalid_argument("statfarc: d must be finite and > 0");
  if (p.material_class == MaterialClass::NonMetallic) {
    if (!p.c) throw std::invalid_argument("statfarc: non-metallic parameters require c");
    if (!std::isfinite(*p.c)) throw std::invalid_argument("statfarc: c must be finite");
  } else if (p.c) {
    throw std::invalid_argument("statfarc: metallic parameters must not carry c");
  }
}

Complex principal_sqrt(Complex z) {
  Complex root = std::sqrt(z);
  if (root.real() == 0.0 && std::signbit(root.imag())) root = -root;
  return root;
}

double roughness_factor(double sigma, double theta_deg, double frequency_ghz) {
  require_sigma(sigma);
  require_angle(theta_deg);
  require_frequency(frequency_ghz);
  const double wavelength = constants::kSpeedOfLight / (frequency_ghz * kHzPerGHz);
  const double x = kPi * sigma * std::cos(deg_to_rad(theta_deg)) / wavelength;
  return std::exp(-8.0 * x * x);
}

Complex fresnel_smooth(Complex permittivity, double theta_deg) {
  require_angle(theta_deg);
  const double t = deg_to_rad(theta_deg);
  const double cos_t = std::cos(t);
  // eps - sin^2 t written as (eps - 1) + cos^2 t so that eps = 1 cancels exactly.
  const Complex root = principal_sqrt((permittivity - 1.0) + cos_t * cos_t);
  return (cos_t - root) / (cos_t + root);
}

ReflectionCoefficient fresnel_reflection(const MaterialSurface& surface,
                                         const IncidenceGeometry& geom) {
  validate(geom);
  const double rough =
      roughness_factor(surface.roughness_sigma(), geom.theta_deg, geom.frequency_ghz);
  if (surface.is_perfect_conductor()) return {Complex(-rough, 0.0)};
  return {rough * fresnel_smooth(*surface.permittivity(), geom.theta_deg)};
}

ReflectionCoefficient farc_nonmetallic(const LorenzParams& lorenz, double sigma,
                                       const IncidenceGeometry& geom) {
  validate(geom);
  const double omega = 2.0 * kPi * geom.frequency_ghz;  // rad/ns
  return {rough_fresnel(lorenz_permittivity(lorenz, omega), sigma, geom)};
}

ReflectionCoefficient farc_metallic(const DrudeParams& drude, double sigma,
                                    const IncidenceGeometry& geom) {
  validate(geom);
  const double omega = 2.0 * kPi * geom.frequency_ghz;
  return {rough_fresnel(drude_permittivity(drude, omega), sigma, geom)};
}

ReflectionCoefficient farc_physical(const PhysicalFarcParams& params,
                                    const IncidenceGeometry& geom) {
  return std::visit(
      [&](const auto& model) -> ReflectionCoefficient {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, LorenzParams>)
          return farc_nonmetallic(model, params.roughness_sigma, geom);
        else
          return farc_metallic(model, params.roughness_sigma, geom);
      },
      params.dielectric);
}

ReflectionCoefficient statfarc_eval(const StatFarcParams& p, double theta_deg, double f_ghz) {
  validate(p);
  require_angle(theta_deg);
  require_frequency(f_ghz);
  const double t = deg_to_rad(theta_deg);
  const double cos_t = std::cos(t);
  const double f_sq = f_ghz * f_ghz;
  const double rough = std::exp(-std::pow(10.0, p.a) * f_sq * cos_t * cos_t);
  const double strength = std::pow(10.0, p.b);

  Complex permittivity;
  if (p.material_class == MaterialClass::NonMetallic) {
    permittivity = 1.0 + strength / Complex(std::pow(10.0, *p.c) - p.d * f_sq, -f_ghz);
  } else {
    permittivity = 1.0 - strength / Complex(p.d * f_sq, f_ghz);
  }
  return {rough * fresnel_smooth(permittivity, theta_deg)};
}

namespace {

double roughness_exponent(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error(
        "map_physical_to_statistical: sigma must be > 0 (a = lg of sigma^2); "
        "use the physical model directly for smooth surfaces");
  const double c = constants::kSpeedOfLight;
  return std::log10(8.0 * kPi * kPi * sigma * sigma / (c * c)) + kGHzSquaredExponent;
}

}  // namespace

StatFarcParams map_physical_to_statistical(double sigma, const LorenzParams& lorenz) {
  validate(lorenz);
  const double a = roughness_exponent(sigma);
  const double scale = 2.0 * kPi * lorenz.gamma;
  return StatFarcParams::non_metallic(a, std::log10(lorenz.omega_p_sq / scale),
                                      std::log10(lorenz.omega_0 * lorenz.omega_0 / scale),
                                      2.0 * kPi / lorenz.gamma);
}

StatFarcParams map_physical_to_statistical(double sigma, const DrudeParams& drude) {
  validate(drude);
  const double a = roughness_exponent(sigma);
  const double scale = 2.0 * kPi * drude.gamma;
  return StatFarcParams::metallic(a, std::log10(drude.omega_p_sq / scale),
                                  2.0 * kPi / drude.gamma);
}

StatFarcParams map_physical_to_statistical(const PhysicalFarcParams& params) {
  return std::visit(
      [&](const auto& model) { return map_physical_to_statistical(params.roughness_sigma, model); },
      params.dielectric);
}

PhysicalFarcParams recover_physical_params(const StatFarcParams& p) {
  if (!(p.d > 0.0)) throw std::domain_error("recover_physical_params: d must be > 0");
  validate(p);
  const double c = constants::kSpeedOfLight;
  const double sigma =
      c * std::sqrt(std::pow(10.0, p.a - kGHzSquaredExponent) / (8.0 * kPi * kPi));
  const double gamma = 2.0 * kPi / p.d;
  const double four_pi_sq_over_d = 4.0 * kPi * kPi / p.d;
  const double omega_p_sq = std::pow(10.0, p.b) * four_pi_sq_over_d;
  if (p.material_class == MaterialClass::Metallic)
    return {sigma, DrudeParams{omega_p_sq, gamma}};
  const double omega_0 = std::sqrt(std::pow(10.0, *p.c) * four_pi_sq_over_d);
  return {sigma, LorenzParams{omega_p_sq, omega_0, gamma}};
}

}  // namespace farc
