#include "twisted/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "twisted/parallel.hpp"
#include "twisted/spectral.hpp"

namespace twisted::mult {

std::string_view recipe_name(Recipe r) {
  switch (r) {
    case Recipe::Identity: return "identity";
    case Recipe::Scalar: return "scalar";
    case Recipe::Left: return "left";
    case Recipe::Right: return "right";
    case Recipe::MatrixCoeff: return "matrix-coeff";
    case Recipe::Gilbert: return "gilbert";
    case Recipe::Endomorphism: return "endomorphism";
  }
  return "?";
}

Multiplier identity_multiplier() {
  Multiplier T;
  T.recipe = Recipe::Identity;
  T.eval = [](const GroupElement&, const Element& a) { return a; };
  T.declared_bound = 1.0;
  T.description = "identity";
  return T;
}

Multiplier scalar_multiplier(ScalarKernel phi, double bound, std::string description,
                             std::optional<std::vector<GroupElement>> support) {
  Multiplier T;
  T.recipe = Recipe::Scalar;
  T.eval = [phi = std::move(phi)](const GroupElement& g, const Element& a) { return phi(g) * a; };
  T.declared_bound = bound;
  T.description = std::move(description);
  if (support) std::sort(support->begin(), support->end());
  T.g_support = std::move(support);
  return T;
}

Multiplier left_multiplier(AlgKernel psi, double bound, std::string description) {
  Multiplier T;
  T.recipe = Recipe::Left;
  T.eval = [psi = std::move(psi)](const GroupElement& g, const Element& a) { return psi(g) * a; };
  T.declared_bound = bound;
  T.description = std::move(description);
  return T;
}

Multiplier right_multiplier(AlgKernel psi, double bound, std::string description) {
  Multiplier T;
  T.recipe = Recipe::Right;
  T.eval = [psi = std::move(psi)](const GroupElement& g, const Element& a) { return a * psi(g); };
  T.declared_bound = bound;
  T.description = std::move(description);
  return T;
}

CcElement apply_multiplier(const Multiplier& T, const CcElement& f) {
  CcElement out(f.system());
  for (const auto& [g, a] : f.terms()) {
    if (T.g_support && !std::binary_search(T.g_support->begin(), T.g_support->end(), g)) continue;
    out.set(g, T(g, a));
  }
  return out;
}

PdResult pd_check(const ScalarKernel& phi, const std::vector<GroupElement>& S, const grp::Group& G) {
  if (S.empty()) throw std::invalid_argument("pd_check needs a nonempty set");
  const auto n = static_cast<Eigen::Index>(S.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const GroupElement gi = G.inverse(S[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = phi(G.mul(gi, S[static_cast<std::size_t>(j)]));
  }
  const double asym = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    std::ostringstream os;
    os << "Gram matrix is not Hermitian (deviation " << asym << "); phi(g^-1) != conj(phi(g))";
    throw std::domain_error(os.str());
  }
  PdResult r;
  r.min_eigenvalue = spectral::hermitian_min_eigenvalue(0.5 * (gram + gram.adjoint()));
  r.is_pd = r.min_eigenvalue >= -1e-10;
  return r;
}

Multiplier make_matrix_coeff_multiplier(const hm::EquivariantRep& rep, const hm::ModuleVector& x,
                                        const hm::ModuleVector& y) {
  if (x.rank() != rep.n || y.rank() != rep.n)
    throw std::invalid_argument("matrix coefficient vectors must have the module rank");
  Multiplier T;
  T.recipe = Recipe::MatrixCoeff;
  T.eval = [rep, x, y](const GroupElement& g, const Element& a) {
    return hm::inner(x, rep.rho(a).apply(rep.v(g, y)));
  };
  T.declared_bound = hm::module_norm(x) * hm::module_norm(y);
  T.description = "matrix-coeff(" + rep.rho_tag + "," + rep.v_tag + ")";
  return T;
}

GilbertData gilbert_left_mul(const sys::SystemPtr& sys, std::size_t n) {
  GilbertData d;
  d.system = sys;
  d.n = n;
  d.pi = [n](const Element& a) { return hm::ModuleOperator::left_mul(a, n); };
  return d;
}

Multiplier make_gilbert_multiplier(const GilbertData& data, Side side, double tol) {
  const auto& S = *data.system;
  const auto& G = *S.group;
  const hm::ModuleVector zero = hm::ModuleVector::zero(S.algebra, data.n);
  auto eta = [&zero](const std::map<GroupElement, hm::ModuleVector>& m, const GroupElement& g) -> const hm::ModuleVector& {
    auto it = m.find(g);
    return it == m.end() ? zero : it->second;
  };
  const auto& central = side == Side::Left ? data.eta2 : data.eta1;
  const auto units = alg::matrix_units(S.algebra);
  for (const auto& [t, vec] : central) {
    for (const auto& a : units) {
      const double r = hm::distance(data.pi(a).apply(vec), hm::right_mul(vec, a));
      if (r > tol)
        throw ConditionViolation(side == Side::Left ? "centrality condition on eta2 fails"
                                                    : "centrality condition on eta1 fails",
                                 "t=" + G.to_string(t), r);
    }
  }
  const hm::ModuleVector eta1_e = eta(data.eta1, G.identity());
  auto phi = [&](const GroupElement& g) { return hm::inner(eta1_e, eta(data.eta2, G.inverse(g))); };
  for (const auto& s : data.domain) {
    const alg::Morphism as = S.alpha(s);
    for (const auto& t : data.domain) {
      const GroupElement st = G.mul(s, G.inverse(t));
      Element rhs = as.apply(hm::inner(eta(data.eta1, s), eta(data.eta2, t)));
      if (side == Side::Right) {
        const Element u = S.sigma(s, st);
        rhs = u * rhs * u.adjoint();
      }
      const double r = alg::distance(phi(st), rhs);
      if (r > tol)
        throw ConditionViolation("factorization condition fails",
                                 "s=" + G.to_string(s) + ", t=" + G.to_string(t), r);
    }
  }
  double n1 = 0.0, n2 = 0.0;
  for (const auto& [g, v] : data.eta1) n1 = std::max(n1, hm::module_norm(v));
  for (const auto& [g, v] : data.eta2) n2 = std::max(n2, hm::module_norm(v));

  // Tabulate φ on its finite support {g : g⁻¹ ∈ supp η₂}.
  std::map<GroupElement, Element> table;
  std::vector<GroupElement> support;
  for (const auto& [t, v] : data.eta2) {
    const GroupElement g = G.inverse(t);
    table.emplace(g, phi(g));
    support.push_back(g);
  }
  std::sort(support.begin(), support.end());
  Multiplier T;
  T.recipe = Recipe::Gilbert;
  const Element zero_a = Element::zero(S.algebra);
  if (side == Side::Left) {
    T.eval = [table, zero_a](const GroupElement& g, const Element& a) {
      auto it = table.find(g);
      return it == table.end() ? zero_a : it->second * a;
    };
  } else {
    T.eval = [table, zero_a](const GroupElement& g, const Element& a) {
      auto it = table.find(g);
      return it == table.end() ? zero_a : a * it->second;
    };
  }
  T.g_support = support;
  T.declared_bound = n1 * n2;
  T.description = side == Side::Left ? "gilbert-left" : "gilbert-right";
  return T;
}

Multiplier make_endo_multiplier(const sys::SystemPtr& sys, const alg::Morphism& beta,
                                const std::vector<GroupElement>& samples,
                                const std::vector<Element>& probes, double tol) {
  alg::check_morphism(sys->algebra, beta);
  const auto& G = *sys->group;
  for (const auto& g : samples) {
    const alg::Morphism ag = sys->alpha(g);
    for (const auto& a : probes) {
      const double r = alg::distance(beta.apply(ag.apply(a)), ag.apply(beta.apply(a)));
      if (r > tol) throw ConditionViolation("beta does not commute with alpha", "g=" + G.to_string(g), r);
    }
    for (const auto& h : samples) {
      const Element s = sys->sigma(g, h);
      const double r = alg::distance(beta.apply(s), s);
      if (r > tol)
        throw ConditionViolation("beta does not fix sigma", "g=" + G.to_string(g) + ", h=" + G.to_string(h), r);
    }
  }
  Multiplier T;
  T.recipe = Recipe::Endomorphism;
  T.eval = [beta](const GroupElement&, const Element& a) { return beta.apply(a); };
  T.declared_bound = 1.0;
  T.description = "endomorphism";
  return T;
}

NormProbe multiplier_norm_probe(const Multiplier& T, const sys::SystemPtr& sys, int sample_budget,
                                double radius, std::uint64_t seed) {
  const auto& G = *sys->group;
  const bool finite = G.is_finite();
  const double R = finite ? cc::full_radius(G) : radius;
  const std::vector<GroupElement> supp = finite ? G.elements() : G.ball(std::min(radius / 2.0, 2.0));
  std::vector<CcElement> fs{CcElement::unit(sys)};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < sample_budget; ++i) fs.push_back(cc::random_cc(sys, supp, rng));

  NormProbe out;
  out.exact_denominator = finite;
  out.ratios.assign(fs.size(), 0.0);
  parallel_for(fs.size(), [&](std::size_t i) {
    const double num = cc::compressed_norm(apply_multiplier(T, fs[i]), R, G.default_length());
    const double den = finite ? cc::compressed_norm(fs[i], R, G.default_length()) : cc::norm_l1(fs[i]);
    out.ratios[i] = den > 0 ? num / den : 0.0;
  });
  for (std::size_t i = 0; i < out.ratios.size(); ++i) {
    if (out.ratios[i] > out.ratio_max) {
      out.ratio_max = out.ratios[i];
      out.witness = i;
    }
  }
  return out;
}

}  // namespace twisted::mult
