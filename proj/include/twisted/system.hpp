#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twisted/coeffalg.hpp"
#include "twisted/grp.hpp"

namespace twisted::sys {

using grp::GroupElement;

using ActionRule = std::function<alg::Morphism(const GroupElement&)>;
using CocycleRule = std::function<alg::Element(const GroupElement&, const GroupElement&)>;

// Σ = (A, G, α, σ). Rules must be pure; the struct is shared read-only.
struct TwistedSystem {
  alg::AlgebraSpec algebra;
  std::shared_ptr<const grp::Group> group;
  ActionRule action;
  CocycleRule cocycle;
  std::string provenance;  // trivial | theta(...) | section | table | perturbed(...)
  // Pairs where the rule was edited; validation always includes triples through them.
  std::vector<std::pair<GroupElement, GroupElement>> witness_pairs;

  alg::Morphism alpha(const GroupElement& g) const { return action(g); }
  alg::Morphism alpha_inv(const GroupElement& g) const { return action(g).inverse(); }
  alg::Element sigma(const GroupElement& g, const GroupElement& h) const { return cocycle(g, h); }
  alg::Element unit() const { return alg::Element::unit(algebra); }
};

using SystemPtr = std::shared_ptr<const TwistedSystem>;

ActionRule trivial_action(const alg::AlgebraSpec& spec);
// α_g from the images of the basic generators, extended along the factorization of g.
ActionRule action_from_generators(std::shared_ptr<const grp::Group> group,
                                  std::vector<alg::Morphism> images);
ActionRule action_table(std::map<GroupElement, alg::Morphism> table);

CocycleRule trivial_cocycle(const alg::AlgebraSpec& spec);
// exp(2πiθ Σ_{i>j} m_i n_j)·1 on Z^d or a product of cyclic groups; exp(2πiθ m n) when d = 1.
CocycleRule theta_cocycle(const alg::AlgebraSpec& spec, double theta);
CocycleRule cocycle_table(const alg::AlgebraSpec& spec,
                          std::map<std::pair<GroupElement, GroupElement>, alg::Element> table);

// Central extension 1 → Z → K → G → 1 with Z cyclic of order m inside integer matrices.
// center[k] is the k-th power of a generator of Z; section maps G into K.
struct CentralExtension {
  std::vector<Eigen::MatrixXi> center;
  std::function<Eigen::MatrixXi(const GroupElement&)> section;
};

// σ(g,h) = canonical unitary of C*(Z) ≅ ℂ^m at z = s(g)s(h)s(gh)⁻¹, i.e. the character
// values (exp(2πi jk/m))_j when z = center[k].
CocycleRule section_cocycle(std::shared_ptr<const grp::Group> group, CentralExtension ext);

// Matrix lift of Z2*Z3 into SL(2,Z): s ↦ [[0,-1],[1,0]], t ↦ [[0,-1],[1,1]].
CentralExtension sl2_extension();

SystemPtr make_system(alg::AlgebraSpec algebra, std::shared_ptr<const grp::Group> group,
                      ActionRule action, CocycleRule cocycle, std::string provenance);

// Copy of sys with σ(g,h) multiplied by exp(i·phase); records (g,h) as a witness pair.
SystemPtr perturb_cocycle(const SystemPtr& sys, const GroupElement& g, const GroupElement& h,
                          double phase);

struct ValidationReport {
  double action = 0.0;         // ‖α_gα_h(a) − Ad(σ(g,h))α_{gh}(a)‖
  double cocycle = 0.0;        // ‖σ(g,h)σ(gh,k) − α_g(σ(h,k))σ(g,hk)‖
  double normalization = 0.0;  // σ(g,e), σ(e,g), α_e
  double unitarity = 0.0;      // σ(g,h)*σ(g,h) − 1
  std::size_t triples = 0;
  std::string witness;  // description of the worst triple
  std::array<GroupElement, 3> witness_triple;
  bool passed = false;

  double max_violation() const;
};

using Triple = std::array<GroupElement, 3>;

ValidationReport validate_system(const TwistedSystem& sys, const std::vector<Triple>& triples,
                                 const std::vector<alg::Element>& probes, double tol = 1e-10);

// Exhaustive on finite groups with |G| <= 64, else all of ball(radius)³; witness-pair
// triples are appended; probes are random elements from the fixed seed.
ValidationReport validate_default(const TwistedSystem& sys, double radius = 3.0,
                                  std::uint64_t seed = 0x5eedULL);

std::vector<Triple> default_triples(const TwistedSystem& sys, double radius = 3.0);

}  // namespace twisted::sys
