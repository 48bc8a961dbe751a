#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "twisted/kernels.hpp"

namespace twisted::spectral {

struct LanczosOptions {
  double rel_tol = 1e-14;            // residual tolerance on the eigenvalue of M^H M
  std::uint64_t seed = 0x5eed5eedULL;  // start vector; fixed so results are reproducible
  int max_steps = -1;                // -1: up to the matrix dimension
};

struct SingularValueResult {
  double value = 0.0;
  int steps = 0;
  bool converged = false;
};

/// Largest singular value of a dense complex matrix by Lanczos on M^H M with full
/// reorthogonalization. Matrix-vector products go through the kernel table, so
/// the scalar and AVX2 paths can be compared directly.
SingularValueResult largest_singular_value(const Eigen::MatrixXcd& m,
                                           const kernels::KernelTable& k = kernels::active(),
                                           const LanczosOptions& opts = {});

/// Smallest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double hermitian_min_eigenvalue(const Eigen::MatrixXcd& h);

/// Operator norm of a small dense matrix, computed by full SVD.
double dense_operator_norm(const Eigen::MatrixXcd& m);

}  // namespace twisted::spectral
