#include "twisted/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace twisted::spectral {

using kernels::Complex;

namespace {

void random_unit(std::mt19937_64& rng, std::vector<Complex>& v, const kernels::KernelTable& k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : v) z = Complex(u(rng), u(rng));
  const double nrm = std::sqrt(k.norm2_sq(v.size(), v.data()));
  for (auto& z : v) z /= nrm;
}

// Two passes of classical Gram-Schmidt against the stored basis.
void orthogonalize(const std::vector<std::vector<Complex>>& basis, std::vector<Complex>& w,
                   const kernels::KernelTable& k) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const Complex c = k.dotc(w.size(), q.data(), w.data());
      k.axpy(w.size(), -c, q.data(), w.data());
    }
  }
}

struct Ritz {
  double value;
  double last_component;
};

Ritz top_ritz(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  if (n == 1) return {diag[0], 1.0};
  Eigen::VectorXd d(n);
  Eigen::VectorXd e(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = diag[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) e(i) = offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  return {es.eigenvalues()(n - 1), es.eigenvectors()(n - 1, n - 1)};
}

}  // namespace

SingularValueResult largest_singular_value(const Eigen::MatrixXcd& m,
                                           const kernels::KernelTable& k,
                                           const LanczosOptions& opts) {
  SingularValueResult out;
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  if (rows == 0 || cols == 0) {
    out.converged = true;
    return out;
  }
  // Work on the smaller Gram matrix.
  const bool use_adjoint = rows < cols;
  const Eigen::MatrixXcd mt = use_adjoint ? Eigen::MatrixXcd(m.adjoint()) : Eigen::MatrixXcd();
  const Eigen::MatrixXcd& a = use_adjoint ? mt : m;
  const std::size_t n = static_cast<std::size_t>(a.cols());
  const std::size_t r = static_cast<std::size_t>(a.rows());
  const Complex* adata = a.data();

  const int max_steps = opts.max_steps > 0 ? std::min<int>(opts.max_steps, static_cast<int>(n))
                                           : static_cast<int>(n);

  std::mt19937_64 rng(opts.seed);
  std::vector<std::vector<Complex>> basis;
  std::vector<double> diag, offdiag;
  std::vector<Complex> q(n), tmp(r), w(n);
  random_unit(rng, q, k);

  double theta = 0.0;
  double scale = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    k.gemv(r, n, adata, q.data(), tmp.data());
    k.gemv_adjoint(r, n, adata, tmp.data(), w.data());
    const double alpha = k.dotc(n, q.data(), w.data()).real();
    basis.push_back(q);
    diag.push_back(alpha);
    orthogonalize(basis, w, k);
    const double beta = std::sqrt(k.norm2_sq(n, w.data()));
    scale = std::max(scale, std::abs(alpha) + beta);
    out.steps = step + 1;

    const Ritz ritz = top_ritz(diag, offdiag);
    theta = ritz.value;
    const bool exhausted = basis.size() == n;
    const double residual = beta * std::abs(ritz.last_component);
    if (exhausted || (step >= 1 && residual <= opts.rel_tol * std::max(theta, 1e-300))) {
      out.converged = true;
      break;
    }
    if (beta <= 1e-13 * std::max(scale, 1e-300)) {
      // Invariant subspace: continue from a fresh direction orthogonal to it.
      random_unit(rng, q, k);
      orthogonalize(basis, q, k);
      const double nq = std::sqrt(k.norm2_sq(n, q.data()));
      if (nq < 1e-12) {
        out.converged = true;
        break;
      }
      for (auto& z : q) z /= nq;
      offdiag.push_back(0.0);
    } else {
      for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / beta;
      offdiag.push_back(beta);
    }
  }
  out.value = std::sqrt(std::max(theta, 0.0));
  return out;
}

double hermitian_min_eigenvalue(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double dense_operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  if (m.size() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace twisted::spectral
