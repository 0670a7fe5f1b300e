#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nsq/tridiagonal.hpp"
#include "oracles.hpp"

using namespace nsq;

TEST_CASE("Toeplitz spectrum") {
  const TridiagonalSymmetric t({2, 2, 2}, {-1, -1});
  const auto ev = lowest_eigenvalues(t, 3);
  const double tol = 1e-12 * t.gershgorin_radius();
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0] - (2.0 - std::sqrt(2.0))) <= tol);
  CHECK(std::abs(ev[1] - 2.0) <= tol);
  CHECK(std::abs(ev[2] - (2.0 + std::sqrt(2.0))) <= tol);
}

TEST_CASE("diagonal matrix") {
  const TridiagonalSymmetric t({3, 1, 2}, {0, 0});
  const auto ev = lowest_eigenvalues(t, 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.count_below(1.5) == 1);
  CHECK(t.count_below(10.0) == 3);
  CHECK(t.count_below(0.0) == 0);
}

TEST_CASE("order one and argument errors") {
  const TridiagonalSymmetric one({4.5}, {});
  CHECK(lowest_eigenvalues(one, 1)[0] == doctest::Approx(4.5));
  CHECK(lowest_eigenvalues(one, 0).empty());
  CHECK_THROWS_AS(lowest_eigenvalues(one, 2), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalSymmetric({1, 2}, {}), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalSymmetric({1, NAN}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalSymmetric({}, {}), std::invalid_argument);
}

TEST_CASE("Sturm bisection agrees with the dense Jacobi oracle") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<std::size_t> order_dist(1, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_tridiagonal(rng, order_dist(rng));
    const auto expected = oracle::jacobi_eigenvalues(oracle::dense_from_tridiagonal(r.diag, r.off));
    const TridiagonalSymmetric t(r.diag, r.off);
    const auto got = lowest_eigenvalues(t, t.order());
    const double tol = 1e-10 * oracle::norm(r);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i] - expected[i]) <= tol);
    }
  }
}

TEST_CASE("clustered and zero off-diagonal entries") {
  // Decoupled blocks with repeated eigenvalues.
  const TridiagonalSymmetric t({1, 1, 1, 5, 5}, {0, 0, 0, 0});
  const auto ev = lowest_eigenvalues(t, 5);
  for (int i = 0; i < 3; ++i) CHECK(ev[i] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[3] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(ev[4] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues of leading submatrices interlace") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> order_dist(2, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = oracle::random_tridiagonal(rng, order_dist(rng));
    const TridiagonalSymmetric t(r.diag, r.off);
    const double slack = 1e-10 * oracle::norm(r);
    for (std::size_t m = 2; m <= t.order(); ++m) {
      const auto big = lowest_eigenvalues(t.leading(m), m);
      const auto small = lowest_eigenvalues(t.leading(m - 1), m - 1);
      for (std::size_t i = 0; i + 1 < m; ++i) {
        CHECK(big[i] <= small[i] + slack);
        CHECK(small[i] <= big[i + 1] + slack);
      }
    }
  }
}

TEST_CASE("inverse iteration eigenvectors") {
  std::mt19937_64 rng(5);
  const auto r = oracle::random_tridiagonal(rng, 30);
  const TridiagonalSymmetric t(r.diag, r.off);
  const auto ev = lowest_eigenvalues(t, 4);
  std::vector<std::vector<double>> vecs;
  for (double e : ev) {
    auto v = inverse_iteration(t, e);
    // ||T v - e v|| small relative to ||T||
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double tv = r.diag[i] * v[i];
      if (i > 0) tv += r.off[i - 1] * v[i - 1];
      if (i + 1 < v.size()) tv += r.off[i] * v[i + 1];
      res += (tv - e * v[i]) * (tv - e * v[i]);
    }
    CHECK(std::sqrt(res) <= 1e-9 * oracle::norm(r));
    CHECK(std::inner_product(v.begin(), v.end(), v.begin(), 0.0) == doctest::Approx(1.0));
    vecs.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      CHECK(std::abs(std::inner_product(vecs[i].begin(), vecs[i].end(), vecs[j].begin(), 0.0)) <
            1e-8);
    }
  }
}
