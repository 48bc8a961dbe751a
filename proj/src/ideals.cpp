#include "twisted/ideals.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twisted::ideals {

bool InvariantIdeal::contains_block(std::size_t j) const {
  return std::binary_search(blocks.begin(), blocks.end(), j);
}

namespace {

std::vector<alg::Morphism> generator_actions(const sys::TwistedSystem& sys) {
  std::vector<alg::Morphism> out;
  for (const auto& s : sys.group->basic_generators()) out.push_back(sys.alpha(s));
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> block_orbits(const sys::TwistedSystem& sys) {
  const std::size_t k = sys.algebra.blocks();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : generator_actions(sys)) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t a = find(j), b = find(static_cast<std::size_t>(m.source[j]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<int> slot(k, -1);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = find(j);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<std::size_t>(slot[r])].push_back(j);
  }
  return orbits;
}

std::vector<InvariantIdeal> enumerate_invariant_ideals(const sys::TwistedSystem& sys) {
  const auto orbits = block_orbits(sys);
  if (orbits.size() > 20) throw std::invalid_argument("too many block orbits to enumerate");
  std::vector<InvariantIdeal> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << orbits.size()); ++mask) {
    InvariantIdeal J;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (mask >> i & 1U) J.blocks.insert(J.blocks.end(), orbits[i].begin(), orbits[i].end());
    std::sort(J.blocks.begin(), J.blocks.end());
    out.push_back(std::move(J));
  }
  std::sort(out.begin(), out.end(), [](const InvariantIdeal& a, const InvariantIdeal& b) {
    if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
    return a.blocks < b.blocks;
  });
  return out;
}

bool is_invariant(const sys::TwistedSystem& sys, const InvariantIdeal& J) {
  for (const auto& m : generator_actions(sys))
    for (std::size_t j = 0; j < m.source.size(); ++j)
      if (J.contains_block(j) != J.contains_block(static_cast<std::size_t>(m.source[j]))) return false;
  return true;
}

InvariantIdeal intersect(const InvariantIdeal& a, const InvariantIdeal& b) {
  InvariantIdeal out;
  std::set_intersection(a.blocks.begin(), a.blocks.end(), b.blocks.begin(), b.blocks.end(),
                        std::back_inserter(out.blocks));
  return out;
}

InvariantIdeal generated_ideal(const sys::TwistedSystem& sys, const std::vector<Element>& elements) {
  InvariantIdeal out;
  for (const auto& orbit : block_orbits(sys)) {
    bool hit = false;
    for (std::size_t j : orbit)
      for (const auto& a : elements)
        if (a.block(j).cwiseAbs().maxCoeff() > 1e-12) hit = true;
    if (hit) out.blocks.insert(out.blocks.end(), orbit.begin(), orbit.end());
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

double outside_mass(const Element& a, const InvariantIdeal& J) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.blocks().size(); ++j)
    if (!J.contains_block(j)) m = std::max(m, a.block(j).cwiseAbs().maxCoeff());
  return m;
}

bool in_ideal(const Element& a, const InvariantIdeal& J, double tol) { return outside_mass(a, J) <= tol; }

bool ideal_membership(const CcElement& f, const InvariantIdeal& J, Membership) {
  for (const auto& [g, a] : f.terms())
    if (!in_ideal(a, J)) return false;
  return true;
}

CcElement random_in_ideal(const sys::SystemPtr& sys, const InvariantIdeal& J,
                          const std::vector<GroupElement>& support, std::mt19937_64& rng) {
  CcElement f(sys);
  for (const auto& g : support) {
    Element a = alg::random_element(sys->algebra, rng);
    for (std::size_t j = 0; j < a.blocks().size(); ++j)
      if (!J.contains_block(j)) a.block(j).setZero();
    f.set(g, std::move(a));
  }
  return f;
}

Element QuotientSystem::q(const Element& a) const {
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t j : kept) blocks.push_back(a.block(j));
  return Element(std::move(blocks));
}

CcElement QuotientSystem::q(const CcElement& f) const {
  CcElement out(system);
  for (const auto& [g, a] : f.terms()) out.set(g, q(a));
  return out;
}

QuotientSystem quotient_system(const sys::SystemPtr& sys, const InvariantIdeal& J) {
  const auto& S = *sys;
  if (!is_invariant(S, J)) throw std::invalid_argument("ideal is not invariant");
  QuotientSystem Q;
  for (std::size_t j = 0; j < S.algebra.blocks(); ++j)
    if (!J.contains_block(j)) Q.kept.push_back(j);
  if (Q.kept.empty()) throw std::invalid_argument("quotient by the whole algebra");

  alg::AlgebraSpec spec;
  std::vector<int> position(S.algebra.blocks(), -1);
  for (std::size_t i = 0; i < Q.kept.size(); ++i) {
    spec.dims.push_back(S.algebra.dims[Q.kept[i]]);
    position[Q.kept[i]] = static_cast<int>(i);
  }
  const auto kept = Q.kept;
  sys::ActionRule action = [sys, kept, position](const GroupElement& g) {
    const alg::Morphism m = sys->alpha(g);
    alg::Morphism out;
    for (std::size_t j : kept) {
      out.source.push_back(position[static_cast<std::size_t>(m.source[j])]);
      out.unitaries.push_back(m.unitaries[j]);
    }
    return out;
  };
  sys::CocycleRule cocycle = [sys, kept](const GroupElement& g, const GroupElement& h) {
    const Element s = sys->sigma(g, h);
    std::vector<Eigen::MatrixXcd> blocks;
    for (std::size_t j : kept) blocks.push_back(s.block(j));
    return Element(std::move(blocks));
  };
  Q.system = sys::make_system(spec, S.group, std::move(action), std::move(cocycle),
                              "quotient(" + S.provenance + ")");
  return Q;
}

EInvarianceReport e_invariance_probe(const std::vector<CcElement>& generators, int sample_budget,
                                     std::uint64_t seed, double radius) {
  if (generators.empty()) throw std::invalid_argument("e-invariance probe needs generators");
  const sys::SystemPtr sys = generators.front().system();
  const auto& G = *sys->group;
  EInvarianceReport rep;
  std::vector<Element> images;
  for (const auto& gen : generators) images.push_back(cc::expectation(gen));
  rep.reference = generated_ideal(*sys, images);

  auto test = [&](const CcElement& z, const std::string& what) {
    const double m = outside_mass(cc::expectation(z), rep.reference);
    ++rep.samples;
    if (m > 1e-12) {
      ++rep.violations;
      if (m > rep.worst) {
        rep.worst = m;
        rep.witness = what;
      }
    }
  };
  const auto ball = G.ball(radius);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& x : ball)
      test(cc::twisted_mul(CcElement::delta(sys, x, sys->unit()), generators[i]),
           "delta(" + G.to_string(x) + ") * gen" + std::to_string(i));
  std::mt19937_64 rng(seed);
  for (int k = 0; k < sample_budget; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) % generators.size();
    const CcElement h1 = cc::random_cc(sys, ball, rng);
    const CcElement h2 = cc::random_cc(sys, ball, rng);
    test(cc::twisted_mul(cc::twisted_mul(h1, generators[i]), h2),
         "random sample " + std::to_string(k) + " on gen" + std::to_string(i));
  }
  rep.passed = rep.violations == 0;
  return rep;
}

double SplitReport::max_residual() const {
  return std::max({p_idempotent, p_selfadjoint, q_idempotent, orthogonal, sum});
}

std::vector<CcElement> default_commutation_list(const sys::SystemPtr& sys) {
  std::vector<CcElement> out;
  for (const auto& u : alg::matrix_units(sys->algebra))
    out.push_back(CcElement::delta(sys, sys->group->identity(), u));
  for (const auto& s : sys->group->generators()) out.push_back(CcElement::delta(sys, s, sys->unit()));
  return out;
}

SplitReport central_projection_split(const CcElement& s, const std::vector<CcElement>& commute_with) {
  const auto& sys = s.system();
  const CcElement one = CcElement::unit(sys);
  SplitReport r(sys);
  r.selfadjoint = cc::norm_l1(cc::star(s) - s);
  r.unitary = cc::norm_l1(cc::twisted_mul(s, s) - one);
  for (const auto& c : commute_with)
    r.commutation = std::max(r.commutation, cc::norm_l1(cc::twisted_mul(s, c) - cc::twisted_mul(c, s)));
  std::ostringstream os;
  if (r.selfadjoint > 1e-10) os << "s is not self-adjoint (" << r.selfadjoint << ")";
  else if (r.unitary > 1e-10) os << "s*s != 1 (" << r.unitary << ")";
  else if (r.commutation > 1e-10) os << "s is not central on the supplied list (" << r.commutation << ")";
  if (!os.str().empty()) throw std::invalid_argument(os.str());

  r.p = 0.5 * (one + s);
  r.q = 0.5 * (one - s);
  r.p_idempotent = cc::norm_l1(cc::twisted_mul(r.p, r.p) - r.p);
  r.p_selfadjoint = cc::norm_l1(cc::star(r.p) - r.p);
  r.q_idempotent = cc::norm_l1(cc::twisted_mul(r.q, r.q) - r.q);
  r.orthogonal = cc::norm_l1(cc::twisted_mul(r.p, r.q));
  r.sum = cc::norm_l1(r.p + r.q - one);
  return r;
}

double preservation_defect(const mult::Multiplier& T, const InvariantIdeal& J,
                           const std::vector<CcElement>& samples) {
  double worst = 0.0;
  for (const auto& f : samples) {
    const CcElement image = mult::apply_multiplier(T, f);
    for (const auto& [g, a] : image.terms()) worst = std::max(worst, outside_mass(a, J));
  }
  return worst;
}

}  // namespace twisted::ideals
