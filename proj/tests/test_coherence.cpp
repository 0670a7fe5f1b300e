#include <cmath>
#include <random>

#include "doctest.h"
#include "nsq/coherence.hpp"

using namespace nsq;

TEST_CASE("delta from lengths") {
  const double a_b = PhysicalConstants::standard().bohr_radius;
  CHECK(delta_from_lengths(a_b, 1.0).value() == hydrogen_delta(1.0).value());
  CHECK(delta_from_lengths(0.1, 1.0).value() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(delta_from_lengths(a_b, 3e5).value() == doctest::Approx(3.1114e-28).epsilon(1e-4));
  CHECK_THROWS_AS(delta_from_lengths(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_from_lengths(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_from_lengths(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("amplification") {
  CHECK(amplification(1e57, DeltaParameter::from_value(1e-26)) == 1e5);
  CHECK(amplification(1.0, DeltaParameter::from_value(0.0)) == 0.0);
  const auto d = delta_from_lengths(PhysicalConstants::standard().bohr_radius, 3e5);
  CHECK(amplification(1e57, d) == doctest::Approx(96.81).epsilon(1e-4));
  CHECK_THROWS_AS(amplification(0.5, d), std::invalid_argument);
}

TEST_CASE("order of magnitude field") {
  CHECK(order_of_magnitude(1e5) == 5);
  CHECK(order_of_magnitude(96.8) == 2);
  CHECK(order_of_magnitude(-7.84e-34) == -33);
  CHECK_FALSE(order_of_magnitude(0.0).has_value());
}

TEST_CASE("estimate with override reports both deltas") {
  StarParameters p;
  p.particle_count = 1e57;
  p.delta_override = 1e-26;
  const auto r = estimate(p);
  CHECK(r.amplification == 1e5);
  CHECK(r.amplification_order() == 5);
  CHECK(r.delta.value() == 1e-26);
  CHECK(r.derived_delta.value() == doctest::Approx(3.1114e-28).epsilon(1e-4));
  CHECK(r.delta_squared_order() == -52);
}

TEST_CASE("star parameter validation") {
  StarParameters p;
  p.micro_length_cm = p.radius_cm;
  CHECK_THROWS_AS(estimate(p), std::invalid_argument);
  p = StarParameters{};
  p.particle_count = 0.1;
  CHECK_THROWS_AS(estimate(p), std::invalid_argument);
  p = StarParameters{};
  p.radius_cm = -1.0;
  CHECK_THROWS_AS(estimate(p), std::invalid_argument);
}

TEST_CASE("sweep over radius scales as inverse fourth power") {
  StarParameters base;
  const auto out = sweep(base, SweepParameter::Radius, {3e5, 3e4, 3e3});
  REQUIRE(out.size() == 3);
  for (const auto& e : out) REQUIRE(e.report.has_value());
  CHECK(out[1].report->amplification / out[0].report->amplification ==
        doctest::Approx(1e4).epsilon(1e-12));
  CHECK(out[2].report->amplification / out[0].report->amplification ==
        doctest::Approx(1e8).epsilon(1e-12));
}

TEST_CASE("sweep over particle count is linear") {
  StarParameters base;
  base.delta_override = 1e-3;
  const auto out = sweep(base, SweepParameter::ParticleCount, {1, 10, 100});
  CHECK(out[1].report->amplification / out[0].report->amplification ==
        doctest::Approx(10.0).epsilon(1e-14));
  CHECK(out[2].report->amplification / out[0].report->amplification ==
        doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("single-value sweep equals the direct call") {
  StarParameters base;
  const auto out = sweep(base, SweepParameter::Radius, {base.radius_cm});
  CHECK(out[0].report->amplification ==
        amplification(base.particle_count, delta_from_lengths(base.micro_length_cm, base.radius_cm)));
}

TEST_CASE("invalid sweep entries do not abort the sweep") {
  StarParameters base;
  const auto out = sweep(base, SweepParameter::Radius, {3e5, 1e-9, -1.0, 3e4});
  REQUIRE(out.size() == 4);
  CHECK(out[0].report.has_value());
  CHECK_FALSE(out[1].report.has_value());  // radius below the micro length
  CHECK_FALSE(out[1].error.empty());
  CHECK_FALSE(out[2].report.has_value());
  CHECK(out[3].report.has_value());
  CHECK(out[3].value == 3e4);
}

TEST_CASE("scaling law over random inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logu(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    StarParameters p;
    p.micro_length_cm = std::pow(10.0, -12.0 + 4.0 * logu(rng));
    p.radius_cm = std::pow(10.0, 1.0 + 6.0 * logu(rng));
    p.particle_count = std::pow(10.0, 60.0 * logu(rng));
    const double k = 1.0 + 9.0 * logu(rng);
    const double base = estimate(p).amplification;

    StarParameters more = p;
    more.particle_count *= k;
    CHECK(estimate(more).amplification / base == doctest::Approx(k).epsilon(1e-12));

    StarParameters smaller = p;
    smaller.radius_cm /= k;
    if (smaller.radius_cm > smaller.micro_length_cm) {
      CHECK(estimate(smaller).amplification / base ==
            doctest::Approx(std::pow(k, 4)).epsilon(1e-12));
    }
    const auto r = estimate(p);
    CHECK(r.amplification == doctest::Approx(r.inputs.particle_count * r.delta_squared).epsilon(1e-12));
  }
}

TEST_CASE("sweep parameter names") {
  CHECK(sweep_parameter_from_string("radius-cm") == SweepParameter::Radius);
  CHECK(sweep_parameter_from_string("D") == SweepParameter::ParticleCount);
  CHECK_THROWS_AS(sweep_parameter_from_string("mass"), std::invalid_argument);
}
