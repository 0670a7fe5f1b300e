// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nsq/analytic.hpp"
#include "nsq/cli.hpp"
#include "nsq/coherence.hpp"
#include "nsq/spectral.hpp"
#include "nsq/tridiagonal.hpp"
#include "oracles.hpp"

using namespace nsq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("criterion %d: %s  %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.empty() ? "" : "  -- ", o.detail.c_str());
  if (!o.pass) ++failures;
}

template <class F>
void criterion(int id, const std::string& title, F&& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  report(id, title, o);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

OscillatorParams with_a(double a) {
  OscillatorParams p;
  p.cutting_length = a;
  return p;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

int main() {
  criterion(1, "Gaussian-cut oscillator levels match the closed form to 1e-6", [](Outcome& o) {
    double worst = 0.0;
    for (double a : {1.0, 2.0, 5.0, 10.0}) {
      const auto r = solve_converged(SpectralProblem::oscillator(with_a(a), 5));
      o.expect(r.converged, fmt("a=%g did not converge", a));
      for (int n = 0; n < 5; ++n) {
        const double err = rel(r.eigenvalues[n], oscillator_level(n, with_a(a)));
        worst = std::max(worst, err);
        o.expect(err <= 1e-6, fmt("a=%g n=%g rel err %.3e", a, n, err));
      }
    }
    if (o.pass) o.detail = fmt("max rel err %.3e", worst);
  });

  criterion(2, "identity cutting reproduces (n+1/2) to 1e-7", [](Outcome& o) {
    const auto r = solve_converged(SpectralProblem::oscillator(OscillatorParams{}, 5));
    o.expect(r.converged, "did not converge");
    double worst = 0.0;
    for (int n = 0; n < 5; ++n) {
      const double err = rel(r.eigenvalues[n], n + 0.5);
      worst = std::max(worst, err);
      o.expect(err <= 1e-7, fmt("n=%g rel err %.3e", n, err));
    }
    if (o.pass) o.detail = fmt("max rel err %.3e", worst);
  });

  criterion(3, "measured spacing shift equals delta^2/2 within 2 delta^4", [](Outcome& o) {
    double worst = 0.0;
    for (double delta : {0.01, 0.05, 0.1}) {
      const double a = 1.0 / std::sqrt(delta);  // hbar = m = omega = 1
      const auto r = solve_converged(SpectralProblem::oscillator(with_a(a), 3));
      o.expect(r.converged, fmt("delta=%g did not converge", delta));
      for (int n = 0; n + 1 < 3; ++n) {
        const double shift = (r.eigenvalues[n + 1] - r.eigenvalues[n]) - 1.0;
        const double gap = std::abs(shift - delta * delta / 2.0);
        worst = std::max(worst, gap);
        o.expect(gap <= 2.0 * std::pow(delta, 4),
                 fmt("delta=%g: |shift - delta^2/2| = %.3e > %.3e", delta, gap,
                     2.0 * std::pow(delta, 4)));
      }
    }
    if (o.pass) o.detail = fmt("max |shift - delta^2/2| %.3e", worst);
  });

  criterion(4, "expansion remainder within 1.1 (n+1/2) delta^4 / 8", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> log_delta(-5.0, -1.0);
    std::uniform_int_distribution<int> n_dist(0, 100);
    for (int i = 0; i < 2000; ++i) {
      const double delta = std::pow(10.0, log_delta(rng));
      const int n = n_dist(rng);
      const double half = n + 0.5;
      const double bound = 1.1 * half * std::pow(delta, 4) / 8.0;
      // Remainder from the cancellation-free spacing shift: exact for every delta.
      const double remainder = half * (exact_relative_spacing_shift(DeltaParameter::from_value(delta)) -
                                       delta * delta / 2.0);
      o.expect(std::abs(remainder) <= bound,
               fmt("n=%g delta=%g remainder %.3e", n, delta, std::abs(remainder)));
      // Raw level difference, where the bound sits well above double resolution.
      if (bound > 1e4 * std::numeric_limits<double>::epsilon() * half) {
        const double a = 1.0 / std::sqrt(delta);  // hbar = m = omega = 1
        const double expanded = half * (1.0 + delta * delta / 2.0) - delta / 2.0;
        const double exact = oscillator_level(n, with_a(a));
        o.expect(std::abs(exact - expanded) <= bound,
                 fmt("n=%g delta=%g level remainder %.3e", n, delta, std::abs(exact - expanded)));
      }
    }
  });

  criterion(5, "separable D-dimensional spectra and degeneracies", [](Outcome& o) {
    for (double a : {1.0, 2.0}) {
      const auto r = solve_converged(SpectralProblem::oscillator(with_a(a), 5));
      for (int dims : {2, 3}) {
        const auto counts = oracle::tuple_counts_by_quanta(dims, 5);
        const auto levels = ddim_levels_by_separability(r.eigenvalues, dims, 5);
        o.expect(levels.size() == 5, "wrong level count");
        for (int big_n = 0; big_n < 5 && big_n < static_cast<int>(levels.size()); ++big_n) {
          const double err = rel(levels[big_n].energy, ddim_level(big_n, dims, with_a(a)));
          o.expect(err <= 1e-6, fmt("a=%g D=%g rel err %.3e", a, dims, err));
          o.expect(levels[big_n].degeneracy == counts.at(big_n) &&
                       levels[big_n].degeneracy == ddim_degeneracy(big_n, dims),
                   fmt("a=%g D=%g N=%g degeneracy mismatch", a, dims, big_n));
        }
      }
    }
  });

  criterion(6, "hydrogen figures for a = 1 cm", [](Outcome& o) {
    const auto delta = hydrogen_delta(1.0);
    o.expect(rel(delta.value(), 2.80028e-17) <= 1e-5, fmt("delta = %.6e", delta.value()));
    o.expect(order_of_magnitude(delta.value()).has_value() &&
                 std::abs(*order_of_magnitude(delta.value()) - (-16)) <= 1,
             "delta order not within one of -16");
    const double correction = hydrogen_relative_correction(delta);
    o.expect(rel(correction, -delta.squared()) <= 1e-12, "Rydberg correction is not -delta^2");
    o.expect(rel(correction, -7.8e-34) <= 0.01, fmt("Rydberg correction %.4e", correction));
    o.expect(order_of_magnitude(correction).has_value() &&
                 std::abs(*order_of_magnitude(correction) - (-32)) <= 1,
             "Rydberg correction order not within one of -32");
    const double level = hydrogen_level(1, delta);
    o.expect(rel(level, -13.60569172 / (1.0 + delta.squared())) <= 1e-15, "ground level");
    const double lamb = lamb_relative_deviation(delta);
    o.expect(rel(lamb, -1.5 * delta.squared()) <= 1e-12, fmt("Lamb deviation %.4e", lamb));
    // The O(delta^4) remainder is only visible at larger delta.
    for (double d : {1e-3, 1e-2, 0.1}) {
      const auto dp = DeltaParameter::from_value(d);
      const double gap = std::abs(lamb_relative_deviation(dp) + 1.5 * d * d);
      o.expect(gap <= 2.0 * std::pow(d, 4), fmt("delta=%g Lamb remainder %.3e", d, gap));
    }
    if (o.pass) o.detail = fmt("delta=%.6e, -delta^2=%.4e", delta.value(), correction);
  });

  criterion(7, "star --neutrons 1e57 --delta 1e-26 reports amplification 1e5", [](Outcome& o) {
    std::ostringstream out, err;
    const int status = cli::main({"nsq", "star", "--neutrons", "1e57", "--delta", "1e-26"}, out, err);
    o.expect(status == 0, "nonzero exit: " + err.str());
    const auto j = io::Json::parse(out.str());
    const double amp = j["results"]["amplification"].get<double>();
    o.expect(amp == 1e5, fmt("amplification %.17g", amp));
    o.expect(j["results"]["order_amplification"] == 5, "order field is not 5");
    if (o.pass) o.detail = fmt("amplification %.17g", amp);
  });

  criterion(8, "Sturm bisection matches dense Jacobi and interlaces", [](Outcome& o) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> order_dist(1, 50);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto r = oracle::random_tridiagonal(rng, order_dist(rng));
      const TridiagonalSymmetric t(r.diag, r.off);
      const double scale = std::max(oracle::norm(r), 1.0);
      const auto want = oracle::jacobi_eigenvalues(oracle::dense_from_tridiagonal(r.diag, r.off));
      const auto got = lowest_eigenvalues(t, t.order());
      for (std::size_t i = 0; i < got.size(); ++i) {
        const double err = std::abs(got[i] - want[i]) / scale;
        worst = std::max(worst, err);
        o.expect(err <= 1e-10, fmt("trial %g index %g scaled err %.3e", trial, i, err));
      }
      for (std::size_t m = 2; m <= t.order(); ++m) {
        const auto big = lowest_eigenvalues(t.leading(m), m);
        const auto small = lowest_eigenvalues(t.leading(m - 1), m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
          o.expect(big[i] <= small[i] + 1e-10 * scale && small[i] <= big[i + 1] + 1e-10 * scale,
                   fmt("trial %g order %g interlacing broken", trial, m));
        }
      }
    }
    if (o.pass) o.detail = fmt("max scaled err %.3e", worst);
  });

  criterion(9, "particle in a box converges to pi^2/2 at second order", [](Outcome& o) {
    const double exact = std::numbers::pi * std::numbers::pi / 2.0;
    SpectralProblem box;
    box.potential = PotentialSpec::free_box();
    box.levels = 1;
    const auto g = Grid1D::make(0.0, 1.0, 101);
    const double e1 = solve_on_grid(box, g)[0] - exact;
    const double e2 = solve_on_grid(box, g.refined())[0] - exact;
    const double e3 = solve_on_grid(box, g.refined().refined())[0] - exact;
    for (double ratio : {e1 / e2, e2 / e3}) {
      o.expect(std::abs(ratio - 4.0) <= 0.4, fmt("error ratio %.4f", ratio));
    }
    box.grid = g;
    const auto r = solve_converged(box);
    o.expect(r.converged && rel(r.eigenvalues[0], exact) <= 1e-8,
             fmt("converged value %.12f", r.eigenvalues[0]));
    if (o.pass) o.detail = fmt("error ratios %.4f, %.4f", e1 / e2, e2 / e3);
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
