#include "nsq/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsq {

const PhysicalConstants& PhysicalConstants::standard() {
  static const PhysicalConstants constants{};
  return constants;
}

void PhysicalConstants::validate() const {
  for (double v : {hbar, rydberg_infinity, bohr_radius, electron_rest_energy,
                   fine_structure_alpha}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("physical constants must be positive and finite");
    }
  }
}

std::string_view to_string(UnitMode mode) {
  return mode == UnitMode::CGS ? "cgs" : "dimensionless";
}

UnitMode unit_mode_from_string(std::string_view name) {
  if (name == "dimensionless") return UnitMode::Dimensionless;
  if (name == "cgs") return UnitMode::CGS;
  throw std::invalid_argument("unknown unit system '" + std::string(name) +
                              "' (expected dimensionless or cgs)");
}

UnitSystem UnitSystem::cgs(double hbar, double mass, double omega) {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0) || !std::isfinite(hbar) ||
      !std::isfinite(mass) || !std::isfinite(omega)) {
    throw std::invalid_argument("CGS unit system needs positive finite hbar, mass and omega");
  }
  UnitSystem u;
  u.mode_ = UnitMode::CGS;
  u.hbar_ = hbar;
  u.mass_ = mass;
  u.omega_ = omega;
  u.length_scale_ = std::sqrt(hbar / (mass * omega));
  u.energy_scale_ = hbar * omega;
  return u;
}

}  // namespace nsq
