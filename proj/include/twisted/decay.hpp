#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twisted/crossed.hpp"

namespace twisted::decay {

using cc::CcElement;
using grp::GroupElement;

enum class WeightTag { Constant, Power, Exponential, ExpT };

std::string_view weight_name(WeightTag tag);
WeightTag parse_weight(std::string_view name);

// κ(g) = 1, (1+L(g))^s, r^{-L(g)} or exp(t L(g)).
struct Weight {
  WeightTag tag = WeightTag::Constant;
  double param = 0.0;  // s, r or t
  grp::LengthTag length = grp::LengthTag::Word;
  std::shared_ptr<const grp::Group> group;
  // κ⁻¹ ∈ ℓ²(G), when the growth of the group is known for this length.
  std::optional<bool> inverse_l2;
  std::string description;

  double operator()(const GroupElement& g) const;
  cc::Kappa kappa() const;
};

Weight make_weight(std::shared_ptr<const grp::Group> group, WeightTag tag, double param,
                   grp::LengthTag length);
Weight make_weight(std::shared_ptr<const grp::Group> group, WeightTag tag, double param);

// ‖κ⁻¹ 1_S‖₂ for a finite set S.
double inverse_l2_on(const Weight& w, const std::vector<GroupElement>& S);

struct DecayProbe {
  double c_lower = 0.0;
  std::vector<double> ratios;           // ‖compression(f)‖ / ‖f‖_{α,κ}
  std::vector<double> ratios_2kappa;    // same numerator over ‖f‖_{2,κ}
  std::size_t witness = 0;              // sample 0 is the unit
  double radius = 0.0;                  // support radius R
  double compression_radius = 0.0;      // 2R, or the full radius on finite groups
  // ‖compression(f)‖ ≤ ‖f‖₁ ≤ ‖κ⁻¹1_supp‖₂ ‖f‖_{2,κ}; worst slack (negative means violated).
  double l1_route_slack = 0.0;
  bool l1_route_holds = true;
};

DecayProbe decay_constant_probe(const sys::SystemPtr& sys, const Weight& w, double radius,
                                int sample_budget, std::uint64_t seed);

// Commutative A, trivial α, scalar σ: Λ_Σ(f) splits over the points ω of A, and each
// summand is dominated entrywise by the untwisted compression of |f|_ω. C_grp is the
// largest scalar ratio ‖compression(|f|_ω)‖/‖|f|_ω‖_{2,κ} seen on the samples.
struct CommuChain {
  double c_grp = 0.0;
  std::vector<double> lower;       // ‖compression(f)‖ per sample
  std::vector<double> alpha_kappa; // ‖f‖_{α,κ} per sample
  double worst_slack = 0.0;        // min of C_grp‖f‖_{α,κ} − lower
  bool holds = true;
};

CommuChain commu_chain_check(const sys::SystemPtr& sys, const Weight& w, double radius,
                             int sample_budget, std::uint64_t seed);

struct ContentOptions {
  int sample_budget = 16;
  int ascent_sweeps = 4;
  std::uint64_t seed = 0x5eedULL;
  std::optional<double> radius;          // compression radius; default depends on E
  std::vector<CcElement> warm_starts;    // e.g. witnesses found for subsets of E
};

struct ContentEstimate {
  std::vector<GroupElement> set;
  double lower = 0.0;
  double upper_card = 0.0;                // |E|
  std::optional<double> upper_sqrt;       // |E|^{1/2}, scalar coefficients only
  std::optional<CcElement> witness;
  double radius = 0.0;
  int sample_budget = 0;
  std::uint64_t seed = 0;
};

// Lower-bound search for sup{‖Λ(f)‖ : supp f ⊆ E, ‖f‖_α = 1}.
ContentEstimate content_probe(const sys::SystemPtr& sys, const std::vector<GroupElement>& E,
                              const ContentOptions& options = {});

enum class ShellNorm { L2, Alpha, Linf };

std::string_view shell_norm_name(ShellNorm n);
ShellNorm parse_shell_norm(std::string_view name);

struct Shell {
  int radius = 0;  // shell k is {k−1 < L ≤ k}, shell 0 is {L = 0}
  std::size_t count = 0;
  double norm = 0.0;
};

// Shells 0..max(shells, outermost support shell).
std::vector<Shell> tail_profile(const CcElement& xi, ShellNorm norm, grp::LengthTag length,
                                int shells = 0);

struct PointComparison {
  GroupElement h;
  double lhs = 0.0;  // |Λ(f)ξ|_ω(h)
  double rhs = 0.0;  // (|f|_ω ∗ |ξ|_ω)(h)
};

struct CommIneqResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // rhs − lhs
  bool holds = true;      // residual ≥ −1e-12
  std::vector<PointComparison> pointwise;
};

// ‖|Λ(f)ξ|_ω‖₂ ≤ ‖|f|_ω ∗ |ξ|_ω‖₂ for commutative A and A^α-valued f; ω is the coordinate
// index. ξ ∈ ℓ²(G, A) is given by its finitely many nonzero values. Throws
// std::invalid_argument when A is not commutative or f is not α-fixed to 1e-10.
CommIneqResult commutative_inequality_check(const sys::SystemPtr& sys, const CcElement& f,
                                            const CcElement& xi, std::size_t omega);

// Experimental: arbitrary f with |f^α|_ω, f^α(g) = α_g⁻¹(f(g)), on the right. Not an
// invariant; a failing result is a counterexample to the generalized form.
CommIneqResult commutative_inequality_experimental(const sys::SystemPtr& sys, const CcElement& f,
                                                   const CcElement& xi, std::size_t omega);

}  // namespace twisted::decay
