#pragma once

// Order-of-magnitude estimates for a coherent many-body system: a tiny
// per-degree-of-freedom correction delta^2 amplified by D degrees of freedom.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsq/analytic.hpp"

namespace nsq {

/// Reference values quoted for neutron stars. Documentation only; nothing
/// computes with them.
namespace neutron_star_reference {
inline constexpr double kNeutronCount = 1e57;
inline constexpr double kRadiusCm = 3e5;
inline constexpr double kDensityGramPerCm3 = 2.8e14;
inline constexpr double kMagneticFieldGauss = 1e12;
inline constexpr double kRotationalEnergyErg = 2e49;
inline constexpr double kQuotedDelta = 1e-26;
}  // namespace neutron_star_reference

struct StarParameters {
  double radius_cm = neutron_star_reference::kRadiusCm;
  double particle_count = neutron_star_reference::kNeutronCount;
  double micro_length_cm = PhysicalConstants::standard().bohr_radius;
  std::string label = "neutron-star";
  /// Directly specified delta; used instead of (micro/radius)^2 when set.
  std::optional<double> delta_override;

  void validate() const;
};

/// round(log10|x|); empty for zero or non-finite x.
std::optional<int> order_of_magnitude(double x);

struct EstimateReport {
  StarParameters inputs;
  /// (micro_length / radius)^2.
  DeltaParameter derived_delta = DeltaParameter::from_value(0.0);
  /// The delta used for the estimate: the override if present, else derived.
  DeltaParameter delta = DeltaParameter::from_value(0.0);
  double delta_squared = 0.0;
  double amplification = 0.0;

  std::optional<int> delta_order() const { return order_of_magnitude(delta.value()); }
  std::optional<int> delta_squared_order() const { return order_of_magnitude(delta_squared); }
  std::optional<int> amplification_order() const { return order_of_magnitude(amplification); }
};

/// (micro/macro)^2, requiring 0 < micro < macro.
DeltaParameter delta_from_lengths(double micro, double macro);

/// D * delta^2 for D >= 1.
double amplification(double particle_count, DeltaParameter delta);

EstimateReport estimate(const StarParameters& params);

enum class SweepParameter { Radius, ParticleCount, MicroLength, Delta };

std::string_view to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(std::string_view name);

struct SweepEntry {
  double value = 0.0;
  std::optional<EstimateReport> report;
  /// Set when this entry's parameter set was invalid.
  std::string error;
};

/// One entry per value, in input order. Invalid parameter sets are reported
/// per entry and do not stop the sweep.
std::vector<SweepEntry> sweep(const StarParameters& base, SweepParameter vary,
                              const std::vector<double>& values);

}  // namespace nsq
