#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "twisted/kernels.hpp"

namespace k = twisted::kernels;
using k::Complex;

namespace {

std::vector<Complex> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Kernels, ScalarMatchesNaiveLoops) {
  std::mt19937_64 rng(1);
  const auto& s = k::scalar_kernels();
  const std::size_t rows = 7, cols = 5;
  auto a = random_vec(rows * cols, rng);
  auto x = random_vec(cols, rng);
  std::vector<Complex> y(rows), ref(rows);
  s.gemv(rows, cols, a.data(), x.data(), y.data());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) ref[r] += a[c * rows + r] * x[c];
  EXPECT_LT(max_diff(y, ref), 1e-13);

  auto u = random_vec(rows, rng);
  std::vector<Complex> z(cols), zref(cols);
  s.gemv_adjoint(rows, cols, a.data(), u.data(), z.data());
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) zref[c] += std::conj(a[c * rows + r]) * u[r];
  EXPECT_LT(max_diff(z, zref), 1e-13);

  Complex dot = s.dotc(rows, u.data(), ref.data()), dref = 0;
  for (std::size_t i = 0; i < rows; ++i) dref += std::conj(u[i]) * ref[i];
  EXPECT_LT(std::abs(dot - dref), 1e-13);
}

TEST(Kernels, Avx2MatchesScalar) {
  const k::KernelTable* v = k::avx2_kernels();
  if (!v) GTEST_SKIP() << "AVX2 not available";
  const auto& s = k::scalar_kernels();
  std::mt19937_64 rng(2);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 64u, 129u}) {
    auto x = random_vec(n, rng), y1 = random_vec(n, rng), y2 = y1;
    const Complex a{0.3, -1.7};
    s.axpy(n, a, x.data(), y1.data());
    v->axpy(n, a, x.data(), y2.data());
    EXPECT_LT(max_diff(y1, y2), 1e-12) << n;
    EXPECT_LT(std::abs(s.dotc(n, x.data(), y1.data()) - v->dotc(n, x.data(), y1.data())), 1e-12 * n);
    EXPECT_NEAR(s.norm2_sq(n, x.data()), v->norm2_sq(n, x.data()), 1e-12 * n);

    const std::size_t cols = n / 2 + 1;
    auto m = random_vec(n * cols, rng), w = random_vec(cols, rng);
    std::vector<Complex> o1(n), o2(n);
    s.gemv(n, cols, m.data(), w.data(), o1.data());
    v->gemv(n, cols, m.data(), w.data(), o2.data());
    EXPECT_LT(max_diff(o1, o2), 1e-12 * n);
    std::vector<Complex> p1(cols), p2(cols);
    s.gemv_adjoint(n, cols, m.data(), o1.data(), p1.data());
    v->gemv_adjoint(n, cols, m.data(), o1.data(), p2.data());
    EXPECT_LT(max_diff(p1, p2), 1e-11 * n);
  }
}

TEST(Kernels, IsaNames) {
  EXPECT_EQ(k::isa_name(k::Isa::Scalar), "scalar");
  EXPECT_EQ(k::isa_name(k::Isa::Avx2), "avx2");
}
