#pragma once

// Dense complex vector/matrix kernels used by the spectral solvers.
//
// Every kernel has a scalar reference implementation. On x86-64 builds an
// AVX2+FMA variant is compiled in a separate translation unit and selected at
// runtime when the CPU supports it. Matrices are column-major with leading
// dimension equal to the row count (the Eigen default), so the kernels can be
// called directly on Eigen::MatrixXcd storage.

#include <complex>
#include <cstddef>
#include <string_view>

namespace twisted::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // y += a * x
  void (*axpy)(std::size_t n, Complex a, const Complex* x, Complex* y);
  // sum_i conj(x_i) * y_i
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);
  // sum_i |x_i|^2
  double (*norm2_sq)(std::size_t n, const Complex* x);
  // y = A x, A is rows x cols column-major
  void (*gemv)(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x, Complex* y);
  // y = A^H x
  void (*gemv_adjoint)(std::size_t rows, std::size_t cols, const Complex* a, const Complex* x,
                       Complex* y);
};

/// Reference implementation; always available.
const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

/// Table chosen at first use: AVX2 when available, unless the environment
/// variable TWISTED_KERNELS is set to "scalar".
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace twisted::kernels
