#pragma once

// Closed-form spectra of the Gaussian-cutting quantization: oscillator levels
// with the corrected frequency, their D-dimensional isotropic version, and
// the hydrogen corrections obtained from the substitution n -> n sqrt(1+d^2).

#include <cstdint>
#include <span>
#include <vector>

#include "nsq/quantization.hpp"
#include "nsq/units.hpp"

namespace nsq {

/// Dimensionless deviation from standard quantization.
class DeltaParameter {
 public:
  /// hbar / (omega m a^2); zero when a is infinite.
  static DeltaParameter from_oscillator(double hbar, double mass, double omega, double a);
  /// (a_B / a)^2 with a in cm.
  static DeltaParameter from_hydrogen(double a_cm,
                                      const PhysicalConstants& c = PhysicalConstants::standard());
  static DeltaParameter from_value(double delta);

  double value() const { return value_; }
  double squared() const { return value_ * value_; }

 private:
  explicit DeltaParameter(double v) : value_(v) {}
  double value_ = 0.0;
};

DeltaParameter delta_parameter(double hbar, double mass, double omega, double a);

/// omega * sqrt(1 + delta^2).
double omega_bar(double omega, DeltaParameter delta);

/// (n + 1/2) hbar omega_bar - hbar^2/(2 m a^2).
double oscillator_level(int n, const OscillatorParams& params, double hbar = 1.0);

/// Leading-order relative increase of the level spacing, delta^2/2.
double relative_spacing_shift(DeltaParameter delta);
/// sqrt(1 + delta^2) - 1 without cancellation.
double exact_relative_spacing_shift(DeltaParameter delta);

/// (N + D/2) hbar omega_bar - D hbar^2/(2 m a^2).
double ddim_level(int quanta_total, int dims, const OscillatorParams& params, double hbar = 1.0);

/// Number of ways to distribute N quanta over D oscillators, C(N+D-1, D-1).
std::uint64_t ddim_degeneracy(int quanta_total, int dims);

double principal_number_substitution(int n, DeltaParameter delta);

/// -R / (n^2 (1 + delta^2)) in eV.
double hydrogen_level(int n, DeltaParameter delta,
                      const PhysicalConstants& c = PhysicalConstants::standard());
/// Relative change of the hydrogen levels (and of the Rydberg constant),
/// 1/(1+delta^2) - 1 = -delta^2/(1+delta^2).
double hydrogen_relative_correction(DeltaParameter delta);

DeltaParameter hydrogen_delta(double a_cm,
                              const PhysicalConstants& c = PhysicalConstants::standard());

struct LambInputs {
  int n = 2;
  int z = 1;
  double alpha = PhysicalConstants::standard().fine_structure_alpha;
  /// m_e c^2 / Delta E, must exceed 1.
  double bethe_log_argument = 0.0;
  /// e^2 / a_0 in eV.
  double hartree_energy = PhysicalConstants::standard().hartree_energy();
  DeltaParameter delta = DeltaParameter::from_value(0.0);

  void validate() const;
};

/// (4/(3 pi)) (alpha^3 Z^4 / n^3) log(bethe_log_argument) (e^2/a_0) (1+delta^2)^(-3/2).
double lamb_shift(const LambInputs& in);
/// (1 + delta^2)^(-3/2).
double lamb_correction_factor(DeltaParameter delta);
/// (1 + delta^2)^(-3/2) - 1, accurate for delta^2 below machine epsilon.
double lamb_relative_deviation(DeltaParameter delta);

/// |numeric - analytic| / max(|analytic|, 1e-300) per level.
std::vector<double> residuals_vs_numeric(std::span<const double> analytic,
                                         std::span<const double> numeric);

}  // namespace nsq
