#include "nsq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace nsq {

Grid1D Grid1D::make(double x_min, double x_max, std::size_t n_points) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw std::invalid_argument("grid needs finite x_min < x_max");
  }
  if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
  return Grid1D{x_min, x_max, n_points};
}

double Grid1D::node(std::size_t i) const {
  if (i + 1 == n_points) return x_max;
  return x_min + static_cast<double>(i) * spacing();
}

SpectralProblem SpectralProblem::oscillator(const OscillatorParams& params, std::size_t levels,
                                            double hbar) {
  params.validate();
  SpectralProblem p;
  p.potential = PotentialSpec::harmonic(params.mass, params.omega);
  p.cutting = CuttingFunction::gaussian(params.cutting_length);
  p.mass = params.mass;
  p.hbar = hbar;
  p.levels = levels;
  return p;
}

void SpectralProblem::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be > 0");
  if (levels < 1) throw std::invalid_argument("at least one level must be requested");
  if (grid && levels > grid->interior_points()) {
    throw std::invalid_argument("requested " + std::to_string(levels) +
                                " levels but the grid has only " +
                                std::to_string(grid->interior_points()) + " interior points");
  }
}

namespace {

struct HarmonicEstimate {
  double omega_eff;
  double length;
  double shift;
};

// Effective harmonic description of V_eff when V is harmonic.
std::optional<HarmonicEstimate> harmonic_estimate(const SpectralProblem& p) {
  const auto* h = p.potential.harmonic_params();
  if (!h) return std::nullopt;
  double curvature = h->mass * h->omega * h->omega;
  double shift = 0.0;
  if (p.cutting.kind() == CuttingFunction::Kind::Gaussian) {
    const double a = p.cutting.gaussian_length();
    curvature += p.hbar * p.hbar / (p.mass * a * a * a * a);
    shift = -p.hbar * p.hbar / (2.0 * p.mass * a * a);
  }
  const double w = std::sqrt(curvature / p.mass);
  return HarmonicEstimate{w, std::sqrt(p.hbar / (p.mass * w)), shift};
}

}  // namespace

Grid1D auto_domain(const SpectralProblem& problem, const SolveOptions& options) {
  problem.validate();
  if (problem.potential.kind() == PotentialSpec::Kind::FreeBox) {
    throw UnconfinedError("unconfined: the free box potential needs an explicit grid");
  }
  double lo = -kInfiniteLength;
  double hi = kInfiniteLength;
  std::optional<double> top_estimate;
  if (const auto est = harmonic_estimate(problem)) {
    const double k = static_cast<double>(problem.levels);
    const double turning = est->length * std::sqrt(2.0 * k - 1.0);
    const double half = turning + options.margin * est->length;
    lo = -half;
    hi = half;
    top_estimate = (k - 0.5) * problem.hbar * est->omega_eff + est->shift;
  }
  if (const auto* t = problem.potential.table()) {
    lo = std::max(lo, t->front());
    hi = std::min(hi, t->back());
  }
  lo = std::max(lo, problem.cutting.interior_min());
  hi = std::min(hi, problem.cutting.interior_max());
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UnconfinedError("unconfined: no finite domain on which the inputs can be evaluated");
  }

  const auto v_eff = effective_potential(problem.potential, problem.cutting, problem.mass,
                                         problem.hbar);
  const double v_lo = v_eff(lo);
  const double v_hi = v_eff(hi);
  if (top_estimate && (v_lo <= *top_estimate || v_hi <= *top_estimate)) {
    throw UnconfinedError("unconfined: effective potential at the domain boundary lies below "
                          "the estimated top level");
  }
  // V_eff must rise toward both ends of the domain.
  double v_min = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 1001;
  for (int i = 1; i < kSamples - 1; ++i) {
    v_min = std::min(v_min, v_eff(lo + (hi - lo) * i / (kSamples - 1)));
  }
  if (!(v_lo > v_min) || !(v_hi > v_min)) {
    throw UnconfinedError("unconfined: effective potential does not rise toward the domain "
                          "boundaries");
  }
  auto grid = Grid1D::make(lo, hi, options.default_points);
  if (problem.levels > grid.interior_points()) {
    throw std::invalid_argument("more levels requested than interior grid points");
  }
  return grid;
}

TridiagonalSymmetric discretize(const Potential1D& v_eff, const Grid1D& grid, double mass,
                                double hbar) {
  if (!(mass > 0.0) || !(hbar > 0.0)) throw std::invalid_argument("mass and hbar must be > 0");
  const double h = grid.spacing();
  const double kinetic = hbar * hbar / (mass * h * h);
  const std::size_t n = grid.interior_points();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.node(i + 1);
    const double v = v_eff(x);
    if (!std::isfinite(v)) {
      throw std::invalid_argument("effective potential is not finite at x = " + std::to_string(x));
    }
    diag[i] = kinetic + v;
  }
  std::vector<double> off(n - 1, -0.5 * kinetic);
  return TridiagonalSymmetric(std::move(diag), std::move(off));
}

std::vector<double> solve_on_grid(const SpectralProblem& problem, const Grid1D& grid) {
  if (problem.levels > grid.interior_points()) {
    throw std::invalid_argument("more levels requested than interior grid points");
  }
  const auto v_eff = effective_potential(problem.potential, problem.cutting, problem.mass,
                                         problem.hbar);
  return lowest_eigenvalues(discretize(v_eff, grid, problem.mass, problem.hbar), problem.levels);
}

SpectrumResult solve_converged(const SpectralProblem& problem, const SolveOptions& options) {
  problem.validate();
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (options.max_doublings < 1) throw std::invalid_argument("max_doublings must be >= 1");

  Grid1D grid = problem.grid ? *problem.grid : auto_domain(problem, options);
  std::vector<double> coarse = solve_on_grid(problem, grid);
  std::vector<double> previous_extrapolated;

  SpectrumResult result;
  const std::size_t k = problem.levels;
  for (int level = 1; level <= options.max_doublings; ++level) {
    grid = grid.refined();
    std::vector<double> fine = solve_on_grid(problem, grid);
    std::vector<double> extrapolated(k), estimate(k);
    bool raw_settled = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double diff = fine[i] - coarse[i];
      extrapolated[i] = fine[i] + diff / 3.0;
      estimate[i] = std::abs(diff) / 3.0;
      const double scale = std::max(std::abs(fine[i]), std::numeric_limits<double>::min());
      raw_settled = raw_settled && estimate[i] <= options.rel_tol * scale;
    }
    bool extrapolation_settled = !previous_extrapolated.empty();
    for (std::size_t i = 0; extrapolation_settled && i < k; ++i) {
      const double scale = std::max(std::abs(extrapolated[i]), std::numeric_limits<double>::min());
      extrapolation_settled =
          std::abs(extrapolated[i] - previous_extrapolated[i]) <= options.rel_tol * scale;
    }

    result.eigenvalues = extrapolated;
    result.convergence_estimate = estimate;
    result.refinement_levels = level;
    result.grid_used = grid;
    result.converged = raw_settled || extrapolation_settled;
    if (result.converged) break;
    // Eigenvalues carry an absolute rounding error of order eps*||T|| ~ eps/h^2.
    // Once a raw estimate is near the next grid's floor, refining only adds noise.
    const double h = grid.spacing();
    const double next_floor = 4.0 * std::numeric_limits<double>::epsilon() * 2.0 * problem.hbar *
                              problem.hbar / (problem.mass * h * h);
    if (*std::min_element(estimate.begin(), estimate.end()) <= 64.0 * next_floor) break;
    previous_extrapolated = std::move(extrapolated);
    coarse = std::move(fine);
  }

  if (!problem.grid) {
    const auto v_eff = effective_potential(problem.potential, problem.cutting, problem.mass,
                                           problem.hbar);
    const double wall = std::min(v_eff(result.grid_used.x_min), v_eff(result.grid_used.x_max));
    if (result.eigenvalues.back() >= wall) {
      throw UnconfinedError("unconfined: level " + std::to_string(k - 1) +
                            " lies above the effective potential at the domain boundary");
    }
  }

  if (options.eigenvectors) {
    const auto v_eff = effective_potential(problem.potential, problem.cutting, problem.mass,
                                           problem.hbar);
    const auto t = discretize(v_eff, result.grid_used, problem.mass, problem.hbar);
    for (double e : lowest_eigenvalues(t, k)) {
      result.eigenvectors.push_back(inverse_iteration(t, e));
    }
  }
  return result;
}

std::vector<DLevel> ddim_levels_by_separability(const std::vector<double>& levels_1d, int dims,
                                                std::size_t count, double per_dimension_shift) {
  if (levels_1d.empty()) throw std::invalid_argument("no one-dimensional levels supplied");
  if (dims < 1) throw std::invalid_argument("dimension count must be >= 1");
  if (count < 1) throw std::invalid_argument("level count must be >= 1");
  if (!std::is_sorted(levels_1d.begin(), levels_1d.end())) {
    throw std::invalid_argument("one-dimensional levels must be ascending");
  }
  constexpr double kMergeTol = 1e-9;
  const double d = static_cast<double>(dims);
  const double ground = levels_1d.front();
  // Any tuple using an index beyond the list sums to more than this, so every
  // sum at or below it is complete.
  const double complete_bound = levels_1d.back() + (d - 1.0) * ground;
  const double bound_tol = kMergeTol * std::max(std::abs(complete_bound), 1.0);

  auto merge = [](std::vector<DLevel> sums) {
    std::sort(sums.begin(), sums.end(),
              [](const DLevel& a, const DLevel& b) { return a.energy < b.energy; });
    std::vector<DLevel> merged;
    double group_first = 0.0;
    double weighted = 0.0;
    for (const auto& s : sums) {
      if (!merged.empty() &&
          std::abs(s.energy - group_first) <=
              kMergeTol * std::max(std::abs(s.energy), std::abs(group_first))) {
        auto& m = merged.back();
        weighted += s.energy * static_cast<double>(s.degeneracy);
        m.degeneracy += s.degeneracy;
        m.energy = weighted / static_cast<double>(m.degeneracy);
      } else {
        merged.push_back(s);
        group_first = s.energy;
        weighted = s.energy * static_cast<double>(s.degeneracy);
      }
    }
    return merged;
  };

  std::vector<DLevel> partial{{0.0, 1}};
  for (int used = 1; used <= dims; ++used) {
    const double remaining = d - used;
    std::vector<DLevel> next;
    for (const auto& p : partial) {
      for (double e : levels_1d) {
        const double s = p.energy + e;
        if (s + remaining * ground > complete_bound + bound_tol) break;
        next.push_back({s, p.degeneracy});
      }
    }
    partial = merge(std::move(next));
  }
  if (partial.size() < count) {
    throw std::invalid_argument("only " + std::to_string(partial.size()) +
                                " complete levels can be formed from " +
                                std::to_string(levels_1d.size()) +
                                " one-dimensional levels; supply more");
  }
  partial.resize(count);
  for (auto& p : partial) p.energy += d * per_dimension_shift;
  return partial;
}

}  // namespace nsq
