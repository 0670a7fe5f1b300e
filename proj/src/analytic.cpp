#include "nsq/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsq {

DeltaParameter DeltaParameter::from_oscillator(double hbar, double mass, double omega, double a) {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0) || !(a > 0.0)) {
    throw std::invalid_argument("delta needs positive hbar, mass, omega and a");
  }
  if (std::isinf(a)) return DeltaParameter(0.0);
  return DeltaParameter(hbar / (omega * mass * a * a));
}

DeltaParameter DeltaParameter::from_hydrogen(double a_cm, const PhysicalConstants& c) {
  if (!(a_cm > 0.0)) throw std::invalid_argument("hydrogen cutting length a must be > 0");
  if (std::isinf(a_cm)) return DeltaParameter(0.0);
  const double ratio = c.bohr_radius / a_cm;
  return DeltaParameter(ratio * ratio);
}

DeltaParameter DeltaParameter::from_value(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be finite and >= 0");
  }
  return DeltaParameter(delta);
}

DeltaParameter delta_parameter(double hbar, double mass, double omega, double a) {
  return DeltaParameter::from_oscillator(hbar, mass, omega, a);
}

double omega_bar(double omega, DeltaParameter delta) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  return omega * std::hypot(1.0, delta.value());
}

double oscillator_level(int n, const OscillatorParams& params, double hbar) {
  return ddim_level(n, 1, params, hbar);
}

double relative_spacing_shift(DeltaParameter delta) { return 0.5 * delta.squared(); }

double exact_relative_spacing_shift(DeltaParameter delta) {
  return delta.squared() / (std::hypot(1.0, delta.value()) + 1.0);
}

double ddim_level(int quanta_total, int dims, const OscillatorParams& params, double hbar) {
  if (quanta_total < 0) throw std::invalid_argument("quantum number must be >= 0");
  if (dims < 1) throw std::invalid_argument("dimension count must be >= 1");
  params.validate();
  const double d = static_cast<double>(dims);
  const double level = static_cast<double>(quanta_total) + 0.5 * d;
  if (!params.has_cutting()) return level * hbar * params.omega;
  const auto delta = DeltaParameter::from_oscillator(hbar, params.mass, params.omega,
                                                     params.cutting_length);
  const double a = params.cutting_length;
  return level * hbar * omega_bar(params.omega, delta) - d * hbar * hbar / (2.0 * params.mass * a * a);
}

std::uint64_t ddim_degeneracy(int quanta_total, int dims) {
  if (quanta_total < 0 || dims < 1) throw std::invalid_argument("need N >= 0 and D >= 1");
  // C(N + D - 1, D - 1), built incrementally so every partial product is exact.
  std::uint64_t c = 1;
  for (int i = 1; i < dims; ++i) {
    c = c * static_cast<std::uint64_t>(quanta_total + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

double principal_number_substitution(int n, DeltaParameter delta) {
  if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
  return static_cast<double>(n) * std::hypot(1.0, delta.value());
}

double hydrogen_level(int n, DeltaParameter delta, const PhysicalConstants& c) {
  if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
  const double nn = static_cast<double>(n);
  return -c.rydberg_infinity / (nn * nn * (1.0 + delta.squared()));
}

double hydrogen_relative_correction(DeltaParameter delta) {
  return -delta.squared() / (1.0 + delta.squared());
}

DeltaParameter hydrogen_delta(double a_cm, const PhysicalConstants& c) {
  return DeltaParameter::from_hydrogen(a_cm, c);
}

void LambInputs::validate() const {
  if (n < 1) throw std::invalid_argument("Lamb shift: n must be >= 1");
  if (z < 1) throw std::invalid_argument("Lamb shift: Z must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("Lamb shift: alpha must be > 0");
  if (!(hartree_energy > 0.0)) throw std::invalid_argument("Lamb shift: e^2/a0 must be > 0");
  if (!(bethe_log_argument > 1.0) || !std::isfinite(bethe_log_argument)) {
    throw std::invalid_argument("Lamb shift: Bethe logarithm argument must be > 1");
  }
}

double lamb_shift(const LambInputs& in) {
  in.validate();
  const double n = in.n;
  const double z = in.z;
  const double prefactor = 4.0 / (3.0 * std::numbers::pi);
  return prefactor * (in.alpha * in.alpha * in.alpha * z * z * z * z / (n * n * n)) *
         std::log(in.bethe_log_argument) * in.hartree_energy * lamb_correction_factor(in.delta);
}

double lamb_correction_factor(DeltaParameter delta) {
  return std::pow(1.0 + delta.squared(), -1.5);
}

double lamb_relative_deviation(DeltaParameter delta) {
  return std::expm1(-1.5 * std::log1p(delta.squared()));
}

std::vector<double> residuals_vs_numeric(std::span<const double> analytic,
                                         std::span<const double> numeric) {
  if (analytic.size() != numeric.size()) {
    throw std::invalid_argument("residuals: " + std::to_string(analytic.size()) +
                                " analytic vs " + std::to_string(numeric.size()) +
                                " numeric levels");
  }
  constexpr double kFloor = 1e-300;
  std::vector<double> out(analytic.size());
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    out[i] = std::abs(numeric[i] - analytic[i]) / std::max(std::abs(analytic[i]), kFloor);
  }
  return out;
}

}  // namespace nsq
