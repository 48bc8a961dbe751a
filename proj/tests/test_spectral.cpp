#include <cmath>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "twisted/spectral.hpp"

using namespace twisted;

namespace {

Eigen::MatrixXcd random_matrix(int r, int c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

// Tridiagonal path-graph adjacency on n vertices; spectral radius 2cos(π/(n+1)).
Eigen::MatrixXcd path(int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
  return m;
}

}  // namespace

TEST(Spectral, LanczosMatchesSvd) {
  for (auto [r, c] : {std::pair{5, 5}, {12, 7}, {40, 40}, {3, 30}}) {
    const Eigen::MatrixXcd m = random_matrix(r, c, static_cast<std::uint64_t>(r * 100 + c));
    const double ref = Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues()(0);
    const auto got = spectral::largest_singular_value(m);
    EXPECT_TRUE(got.converged);
    EXPECT_NEAR(got.value, ref, 1e-9 * ref) << r << "x" << c;
    EXPECT_NEAR(spectral::dense_operator_norm(m), ref, 1e-12 * ref);
  }
}

TEST(Spectral, ScalarAndActiveKernelsAgree) {
  const Eigen::MatrixXcd m = random_matrix(33, 21, 11);
  const double a = spectral::largest_singular_value(m, kernels::scalar_kernels()).value;
  const double b = spectral::largest_singular_value(m, kernels::active()).value;
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Spectral, PathGraphClosedForm) {
  for (int n : {1, 2, 9, 33, 129}) {
    const double expect = 2.0 * std::cos(M_PI / (n + 1));
    EXPECT_NEAR(spectral::largest_singular_value(path(n)).value, expect, 1e-10) << n;
  }
}

TEST(Spectral, ZeroMatrix) {
  const auto r = spectral::largest_singular_value(Eigen::MatrixXcd::Zero(4, 3));
  EXPECT_EQ(r.value, 0.0);
}

TEST(Spectral, HermitianMinEigenvalue) {
  Eigen::MatrixXcd h(2, 2);
  h << 2.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 2.0;
  EXPECT_NEAR(spectral::hermitian_min_eigenvalue(h), 1.0, 1e-12);
  EXPECT_NEAR(spectral::hermitian_min_eigenvalue(-path(4)), -2.0 * std::cos(M_PI / 5), 1e-12);
}
