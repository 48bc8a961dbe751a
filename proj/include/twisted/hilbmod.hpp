#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "twisted/coeffalg.hpp"
#include "twisted/system.hpp"

namespace twisted::hm {

using alg::Element;
using grp::GroupElement;

// Column (x_1, ..., x_n) in the free module Aⁿ.
struct ModuleVector {
  std::vector<Element> entries;

  std::size_t rank() const { return entries.size(); }
  static ModuleVector zero(const alg::AlgebraSpec& spec, std::size_t n);
  // (1, 0, ..., 0) shifted to position i
  static ModuleVector basis(const alg::AlgebraSpec& spec, std::size_t n, std::size_t i);
};

// ⟨x,y⟩ = Σ_i x_i* y_i, linear in the second variable.
Element inner(const ModuleVector& x, const ModuleVector& y);
ModuleVector right_mul(const ModuleVector& x, const Element& a);
ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
ModuleVector scale(alg::Complex c, const ModuleVector& x);
double module_norm(const ModuleVector& x);
double distance(const ModuleVector& x, const ModuleVector& y);
ModuleVector random_vector(const alg::AlgebraSpec& spec, std::size_t n, std::mt19937_64& rng);

// n×n matrix over A acting on columns, entries row-major.
struct ModuleOperator {
  std::size_t n = 0;
  std::vector<Element> entries;

  const Element& at(std::size_t r, std::size_t c) const { return entries[r * n + c]; }
  Element& at(std::size_t r, std::size_t c) { return entries[r * n + c]; }

  static ModuleOperator identity(const alg::AlgebraSpec& spec, std::size_t n);
  // diag(a, ..., a): left multiplication ℓ(a) on Aⁿ.
  static ModuleOperator left_mul(const Element& a, std::size_t n);
  // u ⊗ 1 for a complex n×n matrix u.
  static ModuleOperator scalar_matrix(const alg::AlgebraSpec& spec, const Eigen::MatrixXcd& u);

  ModuleVector apply(const ModuleVector& x) const;
  ModuleOperator adjoint() const;
  ModuleOperator compose(const ModuleOperator& other) const;  // this ∘ other
  // Inverse computed blockwise: on block j the operator is an (n d_j)×(n d_j) matrix.
  ModuleOperator inverse() const;
};

// v(g)x = V(g)·α_g(x) with α applied entrywise (or V(g)x when twisted is false).
struct EquivariantRep {
  sys::SystemPtr system;
  std::size_t n = 1;
  std::function<ModuleOperator(const Element&)> rho;
  std::function<ModuleOperator(const GroupElement&)> V;
  bool twisted = true;
  std::string rho_tag = "left-multiplication";
  std::string v_tag = "alpha";

  ModuleVector v(const GroupElement& g, const ModuleVector& x) const;
};

// (ℓ, α) on X = A.
EquivariantRep trivial_rep(const sys::SystemPtr& sys);
// (ρ_β, α) on X = A with ρ_β(a) = ℓ(β(a)).
EquivariantRep endomorphism_rep(const sys::SystemPtr& sys, const alg::Morphism& beta);
// ρ = ℓ ⊗ 1 on Aⁿ, V(g) = u(g) ⊗ 1 for a unitary representation u of G on ℂⁿ.
EquivariantRep alpha_tensor_unitary(const sys::SystemPtr& sys, std::size_t n,
                                    std::function<Eigen::MatrixXcd(const GroupElement&)> u);

// ad_ρ(u)y = (ρ(u)y)·u*
ModuleVector ad_rho(const EquivariantRep& rep, const Element& u, const ModuleVector& y);

struct EquivariantReport {
  double axiom1 = 0.0;  // ρ(α_g(a)) v(g) = v(g) ρ(a)
  double axiom2 = 0.0;  // v(g)v(h) = ad_ρ(σ(g,h)) v(gh)
  double axiom3 = 0.0;  // α_g(⟨x,x′⟩) = ⟨v(g)x, v(g)x′⟩
  double axiom4 = 0.0;  // v(g)(x·a) = (v(g)x)·α_g(a)
  bool passed = false;
  std::string witness;
  double max_violation() const;
};

struct EquivariantSamples {
  std::vector<GroupElement> group;
  std::vector<Element> algebra;
  std::vector<ModuleVector> vectors;
};

EquivariantSamples default_samples(const EquivariantRep& rep, std::mt19937_64& rng, double radius = 2.0);
EquivariantReport validate_equivariant(const EquivariantRep& rep, const EquivariantSamples& samples,
                                       double tol = 1e-10);

// Orthonormal basis (flattened ℂ inner product) of Z_X = {z : ρ(a)z = z·a for all a}.
std::vector<ModuleVector> central_part(const EquivariantRep& rep);

}  // namespace twisted::hm
