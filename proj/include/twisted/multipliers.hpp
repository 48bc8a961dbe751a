#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "twisted/crossed.hpp"
#include "twisted/hilbmod.hpp"

namespace twisted::mult {

using alg::Element;
using cc::CcElement;
using grp::GroupElement;

enum class Recipe { Identity, Scalar, Left, Right, MatrixCoeff, Gilbert, Endomorphism };

std::string_view recipe_name(Recipe r);

struct Multiplier {
  Recipe recipe = Recipe::Identity;
  std::function<Element(const GroupElement&, const Element&)> eval;
  // Finite G-support when known; T_g = 0 off it.
  std::optional<std::vector<GroupElement>> g_support;
  double declared_bound = 1.0;
  std::string description;

  Element operator()(const GroupElement& g, const Element& a) const { return eval(g, a); }
};

// Raised when a construction precondition fails; carries the offending sample.
class ConditionViolation : public std::runtime_error {
 public:
  ConditionViolation(const std::string& what, std::string witness, double residual)
      : std::runtime_error(what + " (" + witness + ")"), witness_(std::move(witness)), residual_(residual) {}
  const std::string& witness() const { return witness_; }
  double residual() const { return residual_; }

 private:
  std::string witness_;
  double residual_;
};

using ScalarKernel = std::function<alg::Complex(const GroupElement&)>;
using AlgKernel = std::function<Element(const GroupElement&)>;

Multiplier identity_multiplier();
Multiplier scalar_multiplier(ScalarKernel phi, double bound, std::string description,
                             std::optional<std::vector<GroupElement>> support = std::nullopt);
Multiplier left_multiplier(AlgKernel psi, double bound, std::string description);
Multiplier right_multiplier(AlgKernel psi, double bound, std::string description);

// (T·f)(g) = T_g(f(g)); terms outside the declared G-support are dropped.
CcElement apply_multiplier(const Multiplier& T, const CcElement& f);

struct PdResult {
  bool is_pd = false;
  double min_eigenvalue = 0.0;
};

// Gram matrix [φ(g_i⁻¹ g_j)]; throws std::domain_error if it is not Hermitian to 1e-10.
PdResult pd_check(const ScalarKernel& phi, const std::vector<GroupElement>& S, const grp::Group& G);

// T_g(a) = ⟨x, ρ(a) v(g) y⟩. Declared bound ‖x‖‖y‖.
Multiplier make_matrix_coeff_multiplier(const hm::EquivariantRep& rep, const hm::ModuleVector& x,
                                        const hm::ModuleVector& y);

enum class Side { Left, Right };

struct GilbertData {
  sys::SystemPtr system;
  std::size_t n = 1;                                      // X = Aⁿ
  std::function<hm::ModuleOperator(const Element&)> pi;   // representation of A on X
  std::map<GroupElement, hm::ModuleVector> eta1;          // finitely supported, zero elsewhere
  std::map<GroupElement, hm::ModuleVector> eta2;
  std::vector<GroupElement> domain;                       // (s, t) pairs are checked on domain²
};

// π = ℓ ⊗ 1 on Aⁿ.
GilbertData gilbert_left_mul(const sys::SystemPtr& sys, std::size_t n);

// L^φ (φ(g)a) or R^φ (aφ(g)) with φ(g) = ⟨η₁(e), η₂(g⁻¹)⟩; throws ConditionViolation when
// the centrality or factorization condition fails on the sampled pairs.
Multiplier make_gilbert_multiplier(const GilbertData& data, Side side, double tol = 1e-10);

// T_g = β for all g; throws ConditionViolation unless βα_g = α_gβ and β(σ(g,h)) = σ(g,h)
// on the listed group elements and probes.
Multiplier make_endo_multiplier(const sys::SystemPtr& sys, const alg::Morphism& beta,
                                const std::vector<GroupElement>& samples,
                                const std::vector<Element>& probes, double tol = 1e-10);

struct NormProbe {
  double ratio_max = 0.0;
  std::vector<double> ratios;
  std::size_t witness = 0;  // index of the maximizing sample (0 is the unit)
  bool exact_denominator = false;
};

// max over sampled f of ‖compression(T·f)‖ / ‖Λ(f)‖; the denominator is the exact norm on
// finite groups (full regular representation) and ‖f‖₁ otherwise. A lower bound for ‖M_T‖.
NormProbe multiplier_norm_probe(const Multiplier& T, const sys::SystemPtr& sys, int sample_budget,
                                double radius, std::uint64_t seed);

}  // namespace twisted::mult
