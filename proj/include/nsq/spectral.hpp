#pragma once

// Grid diagonalization of the 1D modified Hamiltonian with Dirichlet walls,
// Richardson-extrapolated grid refinement, and isotropic D-dimensional
// spectra assembled by separability.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nsq/quantization.hpp"
#include "nsq/tridiagonal.hpp"

namespace nsq {

/// Raised when the effective potential does not confine the requested levels
/// on the chosen domain.
class UnconfinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = 3;

  static Grid1D make(double x_min, double x_max, std::size_t n_points);

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double node(std::size_t i) const;
  /// Same interval, spacing halved.
  Grid1D refined() const { return make(x_min, x_max, 2 * (n_points - 1) + 1); }
  /// Order of the Dirichlet matrix (boundary nodes excluded).
  std::size_t interior_points() const { return n_points - 2; }
};

struct SpectralProblem {
  PotentialSpec potential = PotentialSpec::harmonic(1.0, 1.0);
  CuttingFunction cutting;
  double mass = 1.0;
  double hbar = 1.0;
  /// Explicit grid; empty means choose one with auto_domain.
  std::optional<Grid1D> grid;
  std::size_t levels = 1;

  /// Harmonic V with Gaussian cutting (identity when a is infinite).
  static SpectralProblem oscillator(const OscillatorParams& params, std::size_t levels,
                                    double hbar = 1.0);
  void validate() const;
};

struct SolveOptions {
  double rel_tol = 1e-8;
  int max_doublings = 6;
  /// Extra half-width beyond the outermost turning point, in units of
  /// sqrt(hbar/(m*omega_eff)).
  double margin = 6.0;
  std::size_t default_points = 2001;
  bool eigenvectors = false;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;
  Grid1D grid_used;
  int refinement_levels = 0;
  bool converged = false;
  std::vector<double> convergence_estimate;
  std::optional<std::vector<double>> analytic_reference;
  std::optional<std::vector<double>> residuals;
  /// Unit-norm eigenvectors on the interior nodes of grid_used, if requested.
  std::vector<std::vector<double>> eigenvectors;
};

/// Symmetric domain [-L, L] with L = x_turn(k) + margin * sqrt(hbar/(m w)),
/// where w is the effective harmonic frequency and x_turn(k) the classical
/// turning point of the highest requested level. Tabulated inputs clip the
/// domain to the range where they can be evaluated. Throws UnconfinedError
/// for the free box or when V_eff at the boundary lies below the estimated
/// top level.
Grid1D auto_domain(const SpectralProblem& problem, const SolveOptions& options = {});

/// Second-order central-difference Hamiltonian on the interior nodes:
/// diagonal hbar^2/(m h^2) + V(x_i), off-diagonal -hbar^2/(2 m h^2).
TridiagonalSymmetric discretize(const Potential1D& v_eff, const Grid1D& grid, double mass,
                                double hbar);

/// Lowest problem.levels eigenvalues on one grid, no extrapolation.
std::vector<double> solve_on_grid(const SpectralProblem& problem, const Grid1D& grid);

/// Solves on successively halved grids, Richardson-extrapolating each pair,
/// until successive extrapolated levels agree to rel_tol or the doubling cap
/// is reached (then converged = false). Refinement also stops early, unconverged,
/// once further halving would be dominated by rounding in the eigenvalues.
SpectrumResult solve_converged(const SpectralProblem& problem, const SolveOptions& options = {});

struct DLevel {
  double energy;
  std::uint64_t degeneracy;
};

/// Lowest `count` distinct values of E_{i1} + ... + E_{iD} over ordered index
/// tuples, each with the number of tuples producing it, plus D times
/// `per_dimension_shift` (for 1D levels whose constant shift was removed).
/// Sums within 1e-9 relative are merged. Throws if the supplied 1D levels
/// cannot determine `count` complete levels.
std::vector<DLevel> ddim_levels_by_separability(const std::vector<double>& levels_1d, int dims,
                                                std::size_t count,
                                                double per_dimension_shift = 0.0);

}  // namespace nsq
