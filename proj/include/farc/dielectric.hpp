#pragma once

#include <complex>

namespace farc {

using Complex = std::complex<double>;

/// Complex relative permittivity. The sign of the imaginary part follows the
/// Lorenz/Drude expressions as written (-j*gamma*omega and +j*gamma*omega).
using ComplexPermittivity = Complex;

namespace constants {
inline constexpr double kElementaryCharge = 1.6e-19;  // C
inline constexpr double kElectronMass = 9.3e-31;      // kg
inline constexpr double kVacuumPermittivity = 8.85e-12;  // F/m
inline constexpr double kSpeedOfLight = 2.998e8;      // m/s
}  // namespace constants

// Angular quantities below are unit-agnostic: any consistent angular unit
// works (rad/s, or rad/ns as used by the reflection models with f in GHz).

struct LorenzParams {
  double omega_p_sq;  // squared plasma angular frequency
  double omega_0;     // resonant angular frequency
  double gamma;       // damping constant
};

struct DrudeParams {
  double omega_p_sq;
  double gamma;
};

/// Throws std::invalid_argument unless omega_p_sq >= 0, omega_0 > 0, gamma > 0.
void validate(const LorenzParams& p);
/// Throws std::invalid_argument unless omega_p_sq >= 0, gamma > 0.
void validate(const DrudeParams& p);

/// N e^2 / (m eps0) in (rad/s)^2 for an electron density N in m^-3.
double plasma_frequency_sq(double electron_density);

/// 1 + wp^2 / (w0^2 - w^2 - j gamma w), defined for omega >= 0.
ComplexPermittivity lorenz_permittivity(const LorenzParams& p, double omega);

/// 1 - wp^2 / (w^2 + j gamma w), defined for omega > 0 (pole at zero).
ComplexPermittivity drude_permittivity(const DrudeParams& p, double omega);

}  // namespace farc
