#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "twisted/crossed.hpp"
#include "twisted/multipliers.hpp"

namespace twisted::ideals {

using alg::Element;
using cc::CcElement;
using grp::GroupElement;

// Ideal of a block algebra: the direct sum of the listed blocks (sorted).
struct InvariantIdeal {
  std::vector<std::size_t> blocks;

  bool contains_block(std::size_t j) const;
  bool operator==(const InvariantIdeal&) const = default;
};

// Orbits of the blocks under the permutations induced by the generators, sorted.
std::vector<std::vector<std::size_t>> block_orbits(const sys::TwistedSystem& sys);

// All unions of orbits, ordered by size then lexicographically; includes {0} and A.
std::vector<InvariantIdeal> enumerate_invariant_ideals(const sys::TwistedSystem& sys);

bool is_invariant(const sys::TwistedSystem& sys, const InvariantIdeal& J);
InvariantIdeal intersect(const InvariantIdeal& a, const InvariantIdeal& b);
// Smallest invariant ideal containing every listed element.
InvariantIdeal generated_ideal(const sys::TwistedSystem& sys, const std::vector<Element>& elements);

// Largest max-abs entry of a on blocks outside J.
double outside_mass(const Element& a, const InvariantIdeal& J);
bool in_ideal(const Element& a, const InvariantIdeal& J, double tol = 1e-12);

enum class Membership { InducedAlg, CheckJ };

// At the C_c level both modes test that every coefficient lies in J.
bool ideal_membership(const CcElement& f, const InvariantIdeal& J, Membership mode);

// Random element of C_c with coefficients in J on the given support.
CcElement random_in_ideal(const sys::SystemPtr& sys, const InvariantIdeal& J,
                          const std::vector<GroupElement>& support, std::mt19937_64& rng);

struct QuotientSystem {
  sys::SystemPtr system;
  std::vector<std::size_t> kept;  // blocks of A surviving in A/J

  Element q(const Element& a) const;
  CcElement q(const CcElement& f) const;
};

// Throws std::invalid_argument when J = A or J is not invariant.
QuotientSystem quotient_system(const sys::SystemPtr& sys, const InvariantIdeal& J);

struct EInvarianceReport {
  InvariantIdeal reference;  // generated by E(gen) over the generators
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst = 0.0;        // largest outside mass of E(z)
  std::string witness;
  bool passed = true;
};

// Samples z = h₁⋆gen⋆h₂ (random h_i on ball(radius), plus monomials δ_x⋆gen) and tests
// E(z) against the smallest invariant ideal containing E(gen) for all generators.
EInvarianceReport e_invariance_probe(const std::vector<CcElement>& generators, int sample_budget,
                                     std::uint64_t seed, double radius = 1.0);

struct SplitReport {
  explicit SplitReport(const sys::SystemPtr& sys) : p(sys), q(sys) {}
  CcElement p;
  CcElement q;
  double selfadjoint = 0.0;   // ‖s* − s‖₁
  double unitary = 0.0;       // ‖s⋆s − 1‖₁
  double commutation = 0.0;   // max ‖s⋆c − c⋆s‖₁ over the list
  double p_idempotent = 0.0;  // ‖p⋆p − p‖₁
  double p_selfadjoint = 0.0;
  double q_idempotent = 0.0;
  double orthogonal = 0.0;    // ‖p⋆q‖₁
  double sum = 0.0;           // ‖p + q − 1‖₁
  double max_residual() const;
};

// Matrix units at e and 1⊙δ_s for the generators s.
std::vector<CcElement> default_commutation_list(const sys::SystemPtr& sys);

// p = (1+s)/2, q = (1−s)/2; throws std::invalid_argument unless s is a self-adjoint unitary
// commuting with the list, all to 1e-10.
SplitReport central_projection_split(const CcElement& s, const std::vector<CcElement>& commute_with);

// Largest outside mass of T·f over samples f with coefficients in J.
double preservation_defect(const mult::Multiplier& T, const InvariantIdeal& J,
                           const std::vector<CcElement>& samples);

}  // namespace twisted::ideals
