#include "farc/dielectric.hpp"

#include <cmath>
#include <stdexcept>

namespace farc {

void validate(const LorenzParams& p) {
  if (!(p.omega_p_sq >= 0.0) || !std::isfinite(p.omega_p_sq))
    throw std::invalid_argument("lorenz: omega_p_sq must be finite and >= 0");
  if (!(p.omega_0 > 0.0) || !std::isfinite(p.omega_0))
    throw std::invalid_argument("lorenz: omega_0 must be finite and > 0");
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
    throw std::invalid_argument("lorenz: gamma must be finite and > 0");
}

void validate(const DrudeParams& p) {
  if (!(p.omega_p_sq >= 0.0) || !std::isfinite(p.omega_p_sq))
    throw std::invalid_argument("drude: omega_p_sq must be finite and >= 0");
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
    throw std::invalid_argument("drude: gamma must be finite and > 0");
}

double plasma_frequency_sq(double electron_density) {
  using namespace constants;
  if (!(electron_density >= 0.0))
    throw std::domain_error("plasma_frequency_sq: electron density must be >= 0");
  return electron_density * kElementaryCharge * kElementaryCharge /
         (kElectronMass * kVacuumPermittivity);
}

ComplexPermittivity lorenz_permittivity(const LorenzParams& p, double omega) {
  validate(p);
  if (!(omega >= 0.0))
    throw std::domain_error("lorenz_permittivity: omega must be >= 0");
  const Complex den(p.omega_0 * p.omega_0 - omega * omega, -p.gamma * omega);
  return 1.0 + p.omega_p_sq / den;
}

ComplexPermittivity drude_permittivity(const DrudeParams& p, double omega) {
  validate(p);
  if (!(omega > 0.0))
    throw std::domain_error("drude_permittivity: omega must be > 0 (pole at 0)");
  const Complex den(omega * omega, p.gamma * omega);
  return 1.0 - p.omega_p_sq / den;
}

}  // namespace farc
