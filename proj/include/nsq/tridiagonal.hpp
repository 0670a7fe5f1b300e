#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nsq {

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (one entry shorter).
class TridiagonalSymmetric {
 public:
  TridiagonalSymmetric(std::vector<double> diagonal, std::vector<double> off_diagonal);

  std::size_t order() const { return diag_.size(); }
  std::span<const double> diagonal() const { return diag_; }
  std::span<const double> off_diagonal() const { return off_; }

  /// Leading principal submatrix of order m.
  TridiagonalSymmetric leading(std::size_t m) const;

  /// Gershgorin interval [lower, upper] containing the whole spectrum.
  double gershgorin_lower() const;
  double gershgorin_upper() const;
  /// max(|lower|, |upper|).
  double gershgorin_radius() const;

  /// Number of eigenvalues strictly below sigma, counted from the signs of
  /// the Sturm sequence in its ratio (LDL^T pivot) form.
  std::size_t count_below(double sigma) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
  double pivmin_ = 0.0;
};

/// The k smallest eigenvalues in ascending order by Sturm bisection. Each
/// bracket is shrunk to width <= eps * gershgorin_radius(), well under the
/// 1e-12 * radius contract. Throws std::invalid_argument if k > order.
std::vector<double> lowest_eigenvalues(const TridiagonalSymmetric& t, std::size_t k);

/// Single eigenvalue with zero-based index j in ascending order.
double eigenvalue_by_index(const TridiagonalSymmetric& t, std::size_t j);

/// Unit-norm eigenvector for a computed eigenvalue by inverse iteration.
std::vector<double> inverse_iteration(const TridiagonalSymmetric& t, double eigenvalue);

}  // namespace nsq
