#include "twisted/kernels.hpp"

namespace twisted::kernels {
namespace {

void axpy_scalar(std::size_t n, Complex a, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

Complex dotc_scalar(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2_sq_scalar(std::size_t n, const Complex* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void gemv_scalar(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x,
                 Complex* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = Complex(0.0, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    if (x[j] == Complex(0.0, 0.0)) continue;
    axpy_scalar(rows, x[j], a + j * rows, y);
  }
}

void gemv_adjoint_scalar(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x,
                         Complex* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = dotc_scalar(rows, a + j * rows, x);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, axpy_scalar, dotc_scalar, norm2_sq_scalar,
                                 gemv_scalar, gemv_adjoint_scalar};
  return table;
}

}  // namespace twisted::kernels
