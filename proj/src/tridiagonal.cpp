#include "nsq/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nsq {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();
}  // namespace

TridiagonalSymmetric::TridiagonalSymmetric(std::vector<double> diagonal,
                                           std::vector<double> off_diagonal)
    : diag_(std::move(diagonal)), off_(std::move(off_diagonal)) {
  if (diag_.empty()) throw std::invalid_argument("tridiagonal matrix must have order >= 1");
  if (off_.size() + 1 != diag_.size()) {
    throw std::invalid_argument("off-diagonal must be one shorter than the diagonal");
  }
  double max_off2 = 1.0;
  for (double d : diag_) {
    if (!std::isfinite(d)) throw std::invalid_argument("tridiagonal entries must be finite");
  }
  for (double e : off_) {
    if (!std::isfinite(e)) throw std::invalid_argument("tridiagonal entries must be finite");
    max_off2 = std::max(max_off2, e * e);
  }
  pivmin_ = kSafeMin * max_off2;
}

TridiagonalSymmetric TridiagonalSymmetric::leading(std::size_t m) const {
  if (m == 0 || m > order()) throw std::invalid_argument("leading submatrix order out of range");
  return TridiagonalSymmetric(std::vector<double>(diag_.begin(), diag_.begin() + m),
                              std::vector<double>(off_.begin(), off_.begin() + (m - 1)));
}

double TridiagonalSymmetric::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order(); ++i) {
    const double r = (i > 0 ? std::abs(off_[i - 1]) : 0.0) +
                     (i + 1 < order() ? std::abs(off_[i]) : 0.0);
    lo = std::min(lo, diag_[i] - r);
  }
  return lo;
}

double TridiagonalSymmetric::gershgorin_upper() const {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order(); ++i) {
    const double r = (i > 0 ? std::abs(off_[i - 1]) : 0.0) +
                     (i + 1 < order() ? std::abs(off_[i]) : 0.0);
    hi = std::max(hi, diag_[i] + r);
  }
  return hi;
}

double TridiagonalSymmetric::gershgorin_radius() const {
  return std::max(std::abs(gershgorin_lower()), std::abs(gershgorin_upper()));
}

std::size_t TridiagonalSymmetric::count_below(double sigma) const {
  std::size_t count = 0;
  double q = diag_[0] - sigma;
  if (std::abs(q) <= pivmin_) q = -pivmin_;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag_.size(); ++i) {
    q = diag_[i] - sigma - off_[i - 1] * off_[i - 1] / q;
    if (std::abs(q) <= pivmin_) q = -pivmin_;
    if (q < 0.0) ++count;
  }
  return count;
}

double eigenvalue_by_index(const TridiagonalSymmetric& t, std::size_t j) {
  if (j >= t.order()) {
    throw std::invalid_argument("eigenvalue index " + std::to_string(j) +
                                " exceeds matrix order " + std::to_string(t.order()));
  }
  const double radius = t.gershgorin_radius();
  const double slack = 2.0 * kEps * radius + kSafeMin;
  double lo = t.gershgorin_lower() - slack;
  double hi = t.gershgorin_upper() + slack;
  const double tol = kEps * radius;
  // Invariant: count_below(lo) <= j < count_below(hi).
  for (int iter = 0; iter < 4096 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (t.count_below(mid) <= j) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const TridiagonalSymmetric& t, std::size_t k) {
  if (k > t.order()) {
    throw std::invalid_argument("requested " + std::to_string(k) +
                                " eigenvalues from a matrix of order " +
                                std::to_string(t.order()));
  }
  std::vector<double> out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = eigenvalue_by_index(t, j);
  return out;
}

std::vector<double> inverse_iteration(const TridiagonalSymmetric& t, double eigenvalue) {
  const std::size_t n = t.order();
  if (n == 1) return {1.0};
  const auto diag = t.diagonal();
  const auto off = t.off_diagonal();
  const double tiny = kEps * std::max(t.gershgorin_radius(), kSafeMin);

  // LU of (T - lambda I) with partial pivoting; the factor has a second
  // superdiagonal where rows were swapped.
  std::vector<double> dl(off.begin(), off.end());
  std::vector<double> du(off.begin(), off.end());
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<double> d(n);
  std::vector<bool> swapped(n - 1, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - eigenvalue;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  for (auto& v : d) {
    if (std::abs(v) < tiny) v = std::copysign(tiny, v);
  }

  auto solve = [&](std::vector<double>& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  };
  auto normalize = [](std::vector<double>& v) {
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (auto& x : v) x /= norm;
  };

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i));
  normalize(v);
  for (int iter = 0; iter < 4; ++iter) {
    solve(v);
    normalize(v);
  }
  // Fix the sign so the largest component is positive.
  const auto big = std::max_element(v.begin(), v.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*big < 0.0) {
    for (auto& x : v) x = -x;
  }
  return v;
}

}  // namespace nsq
