#include "nsq/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace nsq {

void StarParameters::validate() const {
  if (!(radius_cm > 0.0) || !std::isfinite(radius_cm)) {
    throw std::invalid_argument("star radius must be > 0");
  }
  if (!(particle_count >= 1.0) || !std::isfinite(particle_count)) {
    throw std::invalid_argument("particle count must be >= 1");
  }
  if (!(micro_length_cm > 0.0)) throw std::invalid_argument("micro length must be > 0");
  if (!(micro_length_cm < radius_cm)) {
    throw std::invalid_argument("micro length must be smaller than the radius");
  }
  if (delta_override && (!(*delta_override >= 0.0) || !std::isfinite(*delta_override))) {
    throw std::invalid_argument("delta override must be finite and >= 0");
  }
}

std::optional<int> order_of_magnitude(double x) {
  if (x == 0.0 || !std::isfinite(x)) return std::nullopt;
  return static_cast<int>(std::lround(std::log10(std::abs(x))));
}

DeltaParameter delta_from_lengths(double micro, double macro) {
  if (!(micro > 0.0) || !(macro > 0.0)) throw std::invalid_argument("lengths must be > 0");
  if (!(micro < macro)) {
    throw std::invalid_argument("microscopic length must be smaller than the macroscopic one");
  }
  const double ratio = micro / macro;
  return DeltaParameter::from_value(ratio * ratio);
}

double amplification(double particle_count, DeltaParameter delta) {
  if (!(particle_count >= 1.0)) throw std::invalid_argument("particle count must be >= 1");
  return particle_count * delta.squared();
}

EstimateReport estimate(const StarParameters& params) {
  params.validate();
  EstimateReport r;
  r.inputs = params;
  r.derived_delta = delta_from_lengths(params.micro_length_cm, params.radius_cm);
  r.delta = params.delta_override ? DeltaParameter::from_value(*params.delta_override)
                                  : r.derived_delta;
  r.delta_squared = r.delta.squared();
  r.amplification = amplification(params.particle_count, r.delta);
  return r;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Radius:
      return "radius-cm";
    case SweepParameter::ParticleCount:
      return "neutrons";
    case SweepParameter::MicroLength:
      return "micro-length-cm";
    case SweepParameter::Delta:
      return "delta";
  }
  return "radius-cm";
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
  if (name == "radius-cm" || name == "radius") return SweepParameter::Radius;
  if (name == "neutrons" || name == "D") return SweepParameter::ParticleCount;
  if (name == "micro-length-cm" || name == "micro-length") return SweepParameter::MicroLength;
  if (name == "delta") return SweepParameter::Delta;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected radius-cm, neutrons, micro-length-cm or delta)");
}

std::vector<SweepEntry> sweep(const StarParameters& base, SweepParameter vary,
                              const std::vector<double>& values) {
  std::vector<SweepEntry> out;
  out.reserve(values.size());
  for (double v : values) {
    SweepEntry entry;
    entry.value = v;
    StarParameters p = base;
    switch (vary) {
      case SweepParameter::Radius:
        p.radius_cm = v;
        break;
      case SweepParameter::ParticleCount:
        p.particle_count = v;
        break;
      case SweepParameter::MicroLength:
        p.micro_length_cm = v;
        break;
      case SweepParameter::Delta:
        p.delta_override = v;
        break;
    }
    try {
      if (!(v > 0.0)) throw std::invalid_argument("sweep values must be positive");
      entry.report = estimate(p);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace nsq
