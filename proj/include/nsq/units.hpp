#pragma once

#include <string_view>

namespace nsq {

/// Physical constants used by the hydrogen and neutron-star estimates.
/// Energies are in eV, lengths in cm, action in erg*s.
struct PhysicalConstants {
  double hbar = 1.054571817e-27;                 // erg*s
  double rydberg_infinity = 13.60569172;         // eV
  double bohr_radius = 0.529177e-8;              // cm
  double electron_rest_energy = 510998.95;       // eV
  double fine_structure_alpha = 7.2973525693e-3;

  /// e^2/a_B, i.e. twice the Rydberg energy.
  double hartree_energy() const { return 2.0 * rydberg_infinity; }

  static const PhysicalConstants& standard();
  void validate() const;
};

enum class UnitMode { Dimensionless, CGS };

std::string_view to_string(UnitMode mode);
UnitMode unit_mode_from_string(std::string_view name);

/// Conversion between physical units and dimensionless oscillator units
/// (hbar = m = omega = 1). Length scale sqrt(hbar/(m*omega)), energy scale
/// hbar*omega. In Dimensionless mode both scales are 1.
class UnitSystem {
 public:
  UnitSystem() = default;
  static UnitSystem dimensionless() { return {}; }
  static UnitSystem cgs(double hbar, double mass, double omega);

  UnitMode mode() const { return mode_; }
  double hbar() const { return hbar_; }
  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double length_scale() const { return length_scale_; }
  double energy_scale() const { return energy_scale_; }

  double length_to_dimensionless(double x) const { return x / length_scale_; }
  double length_from_dimensionless(double x) const { return x * length_scale_; }
  double energy_to_dimensionless(double e) const { return e / energy_scale_; }
  double energy_from_dimensionless(double e) const { return e * energy_scale_; }

 private:
  UnitMode mode_ = UnitMode::Dimensionless;
  double hbar_ = 1.0;
  double mass_ = 1.0;
  double omega_ = 1.0;
  double length_scale_ = 1.0;
  double energy_scale_ = 1.0;
};

}  // namespace nsq
