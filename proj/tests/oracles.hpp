#pragma once

// Reference constructions shared by the unit tests and the acceptance binary. They are
// built from the covariant pair (π, λ_σ) rather than from the compression formula.

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "twisted/crossed.hpp"

namespace oracle {

using twisted::alg::Element;
using twisted::grp::GroupElement;

// π(a)ξ(h) = α_h⁻¹(a)ξ(h) on ℓ²(G, ℂ^D), G finite, indexed by G.elements().
inline Eigen::MatrixXcd pi(const twisted::sys::TwistedSystem& S, const Element& a) {
  const auto& els = S.group->elements();
  const int D = S.algebra.total_dim();
  const auto n = static_cast<Eigen::Index>(els.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * D, n * D);
  for (Eigen::Index i = 0; i < n; ++i)
    m.block(i * D, i * D, D, D) = twisted::alg::to_dense(S.alpha_inv(els[static_cast<std::size_t>(i)]).apply(a));
  return m;
}

// λ_σ(g)ξ(h) = α_h⁻¹(σ(g, g⁻¹h)) ξ(g⁻¹h)
inline Eigen::MatrixXcd lambda(const twisted::sys::TwistedSystem& S, const GroupElement& g) {
  const auto& G = *S.group;
  const auto& els = G.elements();
  const int D = S.algebra.total_dim();
  std::map<GroupElement, Eigen::Index> pos;
  for (std::size_t i = 0; i < els.size(); ++i) pos.emplace(els[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(els.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * D, n * D);
  const GroupElement gi = G.inverse(g);
  for (const auto& h : els) {
    const GroupElement src = G.mul(gi, h);
    m.block(pos.at(h) * D, pos.at(src) * D, D, D) =
        twisted::alg::to_dense(S.alpha_inv(h).apply(S.sigma(g, src)));
  }
  return m;
}

// Λ(f) = Σ_g π(f(g)) λ_σ(g)
inline Eigen::MatrixXcd regular(const twisted::cc::CcElement& f) {
  const auto& S = *f.system();
  const auto n = static_cast<Eigen::Index>(S.group->order()) * S.algebra.total_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [g, a] : f.terms()) m += pi(S, a) * lambda(S, g);
  return m;
}

// Largest eigenvalue of the path graph on n vertices.
inline double path_norm(int n) { return 2.0 * std::cos(std::numbers::pi / (n + 1)); }

// Fejér kernel on Z for the Følner sets {0, ..., N−1}.
inline double fejer_z(int n, int N) { return std::max(0.0, 1.0 - std::abs(n) / static_cast<double>(N)); }

}  // namespace oracle
