// AVX2 + FMA variants of the complex kernels. Compiled with -mavx2 -mfma; never
// called unless dispatch has confirmed CPU support.

#include <immintrin.h>

#include "twisted/kernels.hpp"

namespace twisted::kernels::avx2 {
namespace {

// Two complex doubles per 256-bit register, interleaved (re, im, re, im).
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

}  // namespace

void axpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sr = (re[0] + re[1]) + (re[2] + re[3]);
  double si = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sr, si};
}

double norm2_sq(std::size_t n, const Complex* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

void gemv(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = Complex(0.0, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    if (x[j] == Complex(0.0, 0.0)) continue;
    axpy(rows, x[j], a + j * rows, y);
  }
}

void gemv_adjoint(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x,
                  Complex* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = dotc(rows, a + j * rows, x);
}

}  // namespace twisted::kernels::avx2

namespace twisted::kernels {

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::Avx2, avx2::axpy, avx2::dotc, avx2::norm2_sq, avx2::gemv,
                                 avx2::gemv_adjoint};
  return table;
}

}  // namespace twisted::kernels
