#include "twisted/system.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twisted::sys {

using alg::Complex;
using alg::Element;
using alg::Morphism;

ActionRule trivial_action(const alg::AlgebraSpec& spec) {
  const Morphism id = Morphism::identity(spec);
  return [id](const GroupElement&) { return id; };
}

ActionRule action_from_generators(std::shared_ptr<const grp::Group> group,
                                  std::vector<Morphism> images) {
  if (images.size() != group->basic_generators().size())
    throw std::invalid_argument("need one action image per basic generator of " + group->name());
  for (const auto& m : images)
    if (!m.is_permutation()) throw std::invalid_argument("generator images must be automorphisms");
  return [group, images = std::move(images)](const GroupElement& g) {
    Morphism r = images.front().pow(0);
    for (const auto& [idx, e] : group->factorization(g))
      r = r.compose(images[static_cast<std::size_t>(idx)].pow(e));
    return r;
  };
}

ActionRule action_table(std::map<GroupElement, Morphism> table) {
  return [table = std::move(table)](const GroupElement& g) {
    auto it = table.find(g);
    if (it == table.end()) throw std::out_of_range("action table has no entry for this element");
    return it->second;
  };
}

CocycleRule trivial_cocycle(const alg::AlgebraSpec& spec) {
  const Element one = Element::unit(spec);
  return [one](const GroupElement&, const GroupElement&) { return one; };
}

CocycleRule theta_cocycle(const alg::AlgebraSpec& spec, double theta) {
  return [spec, theta](const GroupElement& m, const GroupElement& n) {
    const auto& a = m.code;
    const auto& b = n.code;
    double s = 0.0;
    if (a.size() == 1) {
      s = static_cast<double>(a[0]) * b[0];
    } else {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) s += static_cast<double>(a[i]) * b[j];
    }
    // Reduce the phase before exponentiating so large coordinates keep full precision.
    const double phase = theta * s - std::floor(theta * s);
    return Element::scalar(spec, std::polar(1.0, 2.0 * std::numbers::pi * phase));
  };
}

CocycleRule cocycle_table(const alg::AlgebraSpec& spec,
                          std::map<std::pair<GroupElement, GroupElement>, Element> table) {
  const Element one = Element::unit(spec);
  return [one, table = std::move(table)](const GroupElement& g, const GroupElement& h) {
    auto it = table.find({g, h});
    return it == table.end() ? one : it->second;
  };
}

namespace {

// exp(2πi num/den), exact at quarter turns so sign cocycles stay in {±1, ±i}.
Complex root_of_unity(int num, int den) {
  if ((4 * num) % den == 0) {
    static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[(4 * num / den) % 4];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * num / den);
}

}  // namespace

CocycleRule section_cocycle(std::shared_ptr<const grp::Group> group, CentralExtension ext) {
  if (ext.center.empty()) throw std::invalid_argument("central extension needs a nonempty center");
  const Eigen::MatrixXi lift_e = ext.section(group->identity());
  const auto n = lift_e.rows();
  if (lift_e != Eigen::MatrixXi::Identity(n, n))
    throw std::invalid_argument("section must map the identity to the identity");
  const int m = static_cast<int>(ext.center.size());
  return [group, ext = std::move(ext), m](const GroupElement& g, const GroupElement& h) {
    const Eigen::MatrixXi lhs = ext.section(g) * ext.section(h);
    const Eigen::MatrixXi rhs = ext.section(group->mul(g, h));
    for (int k = 0; k < m; ++k) {
      if (lhs == ext.center[static_cast<std::size_t>(k)] * rhs) {
        std::vector<Complex> chars;
        for (int j = 0; j < m; ++j)
          chars.push_back(root_of_unity((j * k) % m, m));
        return Element::diagonal(chars);
      }
    }
    throw std::logic_error("section defect is not in the declared center");
  };
}

CentralExtension sl2_extension() {
  CentralExtension ext;
  ext.center = {Eigen::MatrixXi::Identity(2, 2), -Eigen::MatrixXi::Identity(2, 2)};
  Eigen::MatrixXi s(2, 2), t(2, 2);
  s << 0, -1, 1, 0;
  t << 0, -1, 1, 1;
  const Eigen::MatrixXi t2 = t * t;
  ext.section = [s, t, t2](const GroupElement& g) {
    Eigen::MatrixXi r = Eigen::MatrixXi::Identity(2, 2);
    for (int y : g.code) r = r * (y == 0 ? s : (y == 1 ? t : t2));
    return r;
  };
  return ext;
}

SystemPtr make_system(alg::AlgebraSpec algebra, std::shared_ptr<const grp::Group> group,
                      ActionRule action, CocycleRule cocycle, std::string provenance) {
  alg::check_spec(algebra);
  if (!group) throw std::invalid_argument("system needs a group");
  auto sys = std::make_shared<TwistedSystem>();
  sys->algebra = std::move(algebra);
  sys->group = std::move(group);
  sys->action = std::move(action);
  sys->cocycle = std::move(cocycle);
  sys->provenance = std::move(provenance);
  for (const auto& g : sys->group->generators()) alg::check_morphism(sys->algebra, sys->action(g));
  if (!sys->action(sys->group->identity()).is_identity())
    throw std::invalid_argument("alpha_e must be the identity automorphism");
  return sys;
}

SystemPtr perturb_cocycle(const SystemPtr& sys, const GroupElement& g, const GroupElement& h,
                          double phase) {
  auto out = std::make_shared<TwistedSystem>(*sys);
  const CocycleRule base = sys->cocycle;
  const Complex factor = std::polar(1.0, phase);
  out->cocycle = [base, g, h, factor](const GroupElement& x, const GroupElement& y) {
    Element v = base(x, y);
    if (x == g && y == h) v *= factor;
    return v;
  };
  out->witness_pairs.emplace_back(g, h);
  std::ostringstream os;
  os << sys->provenance << "+perturbed(" << sys->group->to_string(g) << ";"
     << sys->group->to_string(h) << ")";
  out->provenance = os.str();
  return out;
}

double ValidationReport::max_violation() const {
  return std::max(std::max(action, cocycle), std::max(normalization, unitarity));
}

namespace {

struct Memo {
  const TwistedSystem& sys;
  std::map<GroupElement, Morphism> alpha;
  std::map<std::pair<GroupElement, GroupElement>, Element> sigma;

  const Morphism& a(const GroupElement& g) {
    auto it = alpha.find(g);
    if (it == alpha.end()) it = alpha.emplace(g, sys.alpha(g)).first;
    return it->second;
  }
  const Element& s(const GroupElement& g, const GroupElement& h) {
    auto key = std::make_pair(g, h);
    auto it = sigma.find(key);
    if (it == sigma.end()) it = sigma.emplace(key, sys.sigma(g, h)).first;
    return it->second;
  }
};

}  // namespace

ValidationReport validate_system(const TwistedSystem& sys, const std::vector<Triple>& triples,
                                 const std::vector<Element>& probes, double tol) {
  ValidationReport rep;
  rep.triples = triples.size();
  const auto& G = *sys.group;
  const GroupElement e = G.identity();
  const Element one = sys.unit();
  Memo memo{sys, {}, {}};
  double worst = -1.0;
  auto consider = [&](double v, double& slot, const Triple& t, const char* what) {
    slot = std::max(slot, v);
    if (v > worst) {
      worst = v;
      rep.witness_triple = t;
      std::ostringstream os;
      os << what << " at (" << G.to_string(t[0]) << ", " << G.to_string(t[1]) << ", "
         << G.to_string(t[2]) << ")";
      rep.witness = os.str();
    }
  };

  for (const auto& p : probes) consider(alg::distance(memo.a(e).apply(p), p), rep.normalization, {e, e, e}, "alpha_e");

  std::set<std::pair<GroupElement, GroupElement>> pairs_done;
  std::set<GroupElement> singles_done;
  for (const auto& t : triples) {
    const auto& [g, h, k] = t;
    for (const GroupElement* x : {&g, &h, &k}) {
      if (!singles_done.insert(*x).second) continue;
      consider(alg::distance(memo.s(*x, e), one), rep.normalization, t, "normalization");
      consider(alg::distance(memo.s(e, *x), one), rep.normalization, t, "normalization");
    }
    const GroupElement gh = G.mul(g, h);
    for (const auto& pr : {std::make_pair(g, h), std::make_pair(h, k)}) {
      if (!pairs_done.insert(pr).second) continue;
      const Element& s = memo.s(pr.first, pr.second);
      const Element ss = s.adjoint();
      consider(std::max(alg::distance(ss * s, one), alg::distance(s * ss, one)), rep.unitarity, t,
               "unitarity");
      const GroupElement prod = G.mul(pr.first, pr.second);
      const Morphism& ag = memo.a(pr.first);
      const Morphism& ah = memo.a(pr.second);
      const Morphism& agh = memo.a(prod);
      for (const auto& p : probes) {
        const Element lhs = ag.apply(ah.apply(p));
        const Element rhs = s * agh.apply(p) * ss;
        consider(alg::distance(lhs, rhs), rep.action, t, "action");
      }
    }
    const Element lhs = memo.s(g, h) * memo.s(gh, k);
    const Element rhs = memo.a(g).apply(memo.s(h, k)) * memo.s(g, G.mul(h, k));
    consider(alg::distance(lhs, rhs), rep.cocycle, t, "cocycle");
  }
  rep.passed = rep.max_violation() <= tol;
  return rep;
}

std::vector<Triple> default_triples(const TwistedSystem& sys, double radius) {
  const auto& G = *sys.group;
  std::vector<GroupElement> pool;
  if (G.is_finite() && G.order() <= 64) {
    pool = G.elements();
  } else {
    pool = G.ball(radius);
  }
  std::vector<Triple> out;
  out.reserve(pool.size() * pool.size() * pool.size());
  for (const auto& g : pool)
    for (const auto& h : pool)
      for (const auto& k : pool) out.push_back({g, h, k});
  auto extra = G.generators();
  extra.push_back(G.identity());
  for (const auto& [g, h] : sys.witness_pairs) {
    for (const auto& k : extra) {
      out.push_back({g, h, k});
      out.push_back({k, g, h});
    }
  }
  return out;
}

ValidationReport validate_default(const TwistedSystem& sys, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> probes;
  for (int i = 0; i < 3; ++i) probes.push_back(alg::random_element(sys.algebra, rng));
  return validate_system(sys, default_triples(sys, radius), probes);
}

}  // namespace twisted::sys
