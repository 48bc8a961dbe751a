#include "twisted/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "twisted/parallel.hpp"

namespace twisted::decay {

using alg::Element;

std::string_view weight_name(WeightTag tag) {
  switch (tag) {
    case WeightTag::Constant: return "constant";
    case WeightTag::Power: return "power";
    case WeightTag::Exponential: return "exponential";
    case WeightTag::ExpT: return "exp-t";
  }
  return "?";
}

WeightTag parse_weight(std::string_view name) {
  if (name == "constant") return WeightTag::Constant;
  if (name == "power") return WeightTag::Power;
  if (name == "exponential") return WeightTag::Exponential;
  if (name == "exp-t") return WeightTag::ExpT;
  throw std::invalid_argument("unknown weight tag: " + std::string(name));
}

double Weight::operator()(const GroupElement& g) const {
  const double L = group->length(g, length);
  switch (tag) {
    case WeightTag::Constant: return 1.0;
    case WeightTag::Power: return std::pow(1.0 + L, param);
    case WeightTag::Exponential: return std::pow(param, -L);
    case WeightTag::ExpT: return std::exp(param * L);
  }
  return 1.0;
}

cc::Kappa Weight::kappa() const {
  return [w = *this](const GroupElement& g) { return w(g); };
}

namespace {

// Sphere sizes grow like rate^k for word length on the free families.
std::optional<bool> inverse_l2_flag(const grp::Group& G, WeightTag tag, double p, grp::LengthTag length) {
  if (G.is_finite()) return true;
  if (tag == WeightTag::Constant) return false;
  const auto fam = G.spec().family;
  if (fam == grp::Family::Zd) {
    const int d = G.spec().params[0];
    if (tag == WeightTag::Power)
      return length == grp::LengthTag::L2Squared ? 4.0 * p > d : 2.0 * p > d;
    return true;
  }
  const double rate = fam == grp::Family::FreeF2 ? 3.0 : std::sqrt(2.0);
  if (tag == WeightTag::Power) return false;
  const double q = tag == WeightTag::Exponential ? p : std::exp(-p);
  return rate * q * q < 1.0;
}

}  // namespace

Weight make_weight(std::shared_ptr<const grp::Group> group, WeightTag tag, double param,
                   grp::LengthTag length) {
  if (!group) throw std::invalid_argument("weight needs a group");
  if (!group->supports_length(length))
    throw std::invalid_argument("length " + std::string(grp::length_name(length)) + " is not defined on " +
                                group->name());
  switch (tag) {
    case WeightTag::Constant: param = 0.0; break;
    case WeightTag::Power:
      if (!(param > 0.0)) throw std::invalid_argument("power weight needs s > 0");
      break;
    case WeightTag::Exponential:
      if (!(param > 0.0 && param < 1.0)) throw std::invalid_argument("exponential weight needs 0 < r < 1");
      break;
    case WeightTag::ExpT:
      if (!(param > 0.0)) throw std::invalid_argument("exp-t weight needs t > 0");
      break;
  }
  Weight w;
  w.tag = tag;
  w.param = param;
  w.length = length;
  w.inverse_l2 = inverse_l2_flag(*group, tag, param, length);
  w.group = std::move(group);
  w.description = std::string(weight_name(tag));
  if (tag != WeightTag::Constant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g, %s)", param, std::string(grp::length_name(length)).c_str());
    w.description += buf;
  }
  return w;
}

Weight make_weight(std::shared_ptr<const grp::Group> group, WeightTag tag, double param) {
  const auto length = group ? group->default_length() : grp::LengthTag::Word;
  return make_weight(std::move(group), tag, param, length);
}

double inverse_l2_on(const Weight& w, const std::vector<GroupElement>& S) {
  double s = 0.0;
  for (const auto& g : S) {
    const double k = w(g);
    s += 1.0 / (k * k);
  }
  return std::sqrt(s);
}

namespace {

double compression_radius_for(const grp::Group& G, double radius) {
  return G.is_finite() ? cc::full_radius(G) : 2.0 * radius;
}

std::vector<CcElement> probe_samples(const sys::SystemPtr& sys, const std::vector<GroupElement>& supp,
                                     int budget, std::uint64_t seed) {
  std::vector<CcElement> fs{CcElement::unit(sys)};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < budget; ++i) fs.push_back(cc::random_cc(sys, supp, rng));
  return fs;
}

}  // namespace

DecayProbe decay_constant_probe(const sys::SystemPtr& sys, const Weight& w, double radius,
                                int sample_budget, std::uint64_t seed) {
  const auto& G = *sys->group;
  DecayProbe out;
  out.radius = radius;
  out.compression_radius = compression_radius_for(G, radius);
  const auto fs = probe_samples(sys, G.ball(radius, w.length), sample_budget, seed);
  const auto kappa = w.kappa();
  out.ratios.assign(fs.size(), 0.0);
  out.ratios_2kappa.assign(fs.size(), 0.0);
  std::vector<double> slack(fs.size(), 0.0);
  parallel_for(fs.size(), [&](std::size_t i) {
    const double lower = cc::compressed_norm(fs[i], out.compression_radius, w.length);
    const double two = cc::norm_2kappa(fs[i], kappa);
    out.ratios[i] = lower / cc::norm_alpha_kappa(fs[i], kappa);
    out.ratios_2kappa[i] = lower / two;
    const double l1 = cc::norm_l1(fs[i]);
    const double bound = inverse_l2_on(w, fs[i].support()) * two;
    slack[i] = std::min(l1 - lower, bound - l1);
  });
  out.l1_route_slack = slack.empty() ? 0.0 : *std::min_element(slack.begin(), slack.end());
  out.l1_route_holds = out.l1_route_slack >= -1e-9;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (out.ratios[i] > out.c_lower) {
      out.c_lower = out.ratios[i];
      out.witness = i;
    }
  return out;
}

CommuChain commu_chain_check(const sys::SystemPtr& sys, const Weight& w, double radius,
                             int sample_budget, std::uint64_t seed) {
  const auto& S = *sys;
  const auto& G = *S.group;
  if (!S.algebra.commutative()) throw std::invalid_argument("commu chain needs a commutative algebra");
  for (const auto& s : G.basic_generators())
    if (!S.alpha(s).is_identity()) throw std::invalid_argument("commu chain needs a trivial action");

  const auto scalars = alg::AlgebraSpec::scalars();
  const auto scalar_sys = sys::make_system(scalars, S.group, sys::trivial_action(scalars),
                                           sys::trivial_cocycle(scalars), "trivial");
  const double R2 = compression_radius_for(G, radius);
  const auto fs = probe_samples(sys, G.ball(radius, w.length), sample_budget, seed);
  const auto kappa = w.kappa();
  const std::size_t points = S.algebra.blocks();

  CommuChain out;
  out.lower.assign(fs.size(), 0.0);
  out.alpha_kappa.assign(fs.size(), 0.0);
  std::vector<double> scalar_ratio(fs.size(), 0.0);
  parallel_for(fs.size(), [&](std::size_t i) {
    out.lower[i] = cc::compressed_norm(fs[i], R2, w.length);
    out.alpha_kappa[i] = cc::norm_alpha_kappa(fs[i], kappa);
    for (std::size_t j = 0; j < points; ++j) {
      CcElement m(scalar_sys);
      for (const auto& [g, a] : fs[i].terms())
        m.set(g, Element::scalar(scalars, std::abs(a.block(j)(0, 0))));
      if (m.empty()) continue;
      const double r = cc::compressed_norm(m, R2, w.length) / cc::norm_2kappa(m, kappa);
      scalar_ratio[i] = std::max(scalar_ratio[i], r);
    }
  });
  out.c_grp = *std::max_element(scalar_ratio.begin(), scalar_ratio.end());
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fs.size(); ++i)
    out.worst_slack = std::min(out.worst_slack, out.c_grp * out.alpha_kappa[i] - out.lower[i]);
  out.holds = out.worst_slack >= -1e-9;
  return out;
}

ContentEstimate content_probe(const sys::SystemPtr& sys, const std::vector<GroupElement>& E,
                              const ContentOptions& options) {
  if (E.empty()) throw std::invalid_argument("content probe needs a nonempty set");
  const auto& S = *sys;
  const auto& G = *S.group;
  std::vector<GroupElement> set(E);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());

  ContentEstimate est;
  est.set = set;
  est.upper_card = static_cast<double>(set.size());
  if (S.algebra.dims == std::vector<int>{1}) est.upper_sqrt = std::sqrt(est.upper_card);
  est.sample_budget = options.sample_budget;
  est.seed = options.seed;
  if (options.radius) {
    est.radius = *options.radius;
  } else if (G.is_finite()) {
    est.radius = cc::full_radius(G);
  } else {
    double m = 0.0;
    for (const auto& g : set) m = std::max(m, G.length(g, G.default_length()));
    est.radius = std::max(2.0, 2.0 * m);
  }
  const double R = est.radius;
  auto objective = [&](const CcElement& f) {
    const double n = cc::norm_alpha(f);
    return n > 0.0 ? cc::compressed_norm(f, R, G.default_length()) / n : 0.0;
  };

  std::vector<CcElement> starts;
  for (const auto& f : options.warm_starts) {
    for (const auto& g : f.support())
      if (!std::binary_search(set.begin(), set.end(), g))
        throw std::invalid_argument("warm start is not supported in E");
    starts.push_back(f);
  }
  for (const auto& g : set) starts.push_back(CcElement::delta(sys, g, S.unit()));
  const std::size_t fixed = starts.size();
  {
    std::mt19937_64 rng(options.seed);
    for (int i = 0; i < options.sample_budget; ++i) starts.push_back(cc::random_cc(sys, set, rng));
  }

  std::vector<double> value(starts.size(), 0.0);
  std::vector<CcElement> best(starts);
  parallel_for(starts.size(), [&](std::size_t i) {
    CcElement f = starts[i];
    double v = objective(f);
    if (i >= fixed) {
      std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
      double step = 0.5;
      for (int sweep = 0; sweep < options.ascent_sweeps; ++sweep) {
        bool improved = false;
        for (const auto& g : set) {
          CcElement c = f;
          c.set(g, f.at(g) + step * alg::random_element(S.algebra, rng));
          const double cv = objective(c);
          if (cv > v) {
            f = std::move(c);
            v = cv;
            improved = true;
          }
        }
        if (!improved) step *= 0.5;
      }
    }
    const double n = cc::norm_alpha(f);
    if (n > 0.0) f *= 1.0 / n;
    best[i] = std::move(f);
    value[i] = v;
  });
  std::size_t arg = 0;
  for (std::size_t i = 1; i < value.size(); ++i)
    if (value[i] > value[arg]) arg = i;
  est.lower = value[arg];
  est.witness = best[arg];
  return est;
}

std::string_view shell_norm_name(ShellNorm n) {
  switch (n) {
    case ShellNorm::L2: return "l2";
    case ShellNorm::Alpha: return "alpha";
    case ShellNorm::Linf: return "linf";
  }
  return "?";
}

ShellNorm parse_shell_norm(std::string_view name) {
  if (name == "l2") return ShellNorm::L2;
  if (name == "alpha") return ShellNorm::Alpha;
  if (name == "linf") return ShellNorm::Linf;
  throw std::invalid_argument("unknown shell norm: " + std::string(name));
}

std::vector<Shell> tail_profile(const CcElement& xi, ShellNorm norm, grp::LengthTag length, int shells) {
  const auto& G = *xi.system()->group;
  std::map<int, CcElement> parts;
  int outer = std::max(shells, 0);
  for (const auto& [g, a] : xi.terms()) {
    const double L = G.length(g, length);
    const int k = L <= 1e-12 ? 0 : static_cast<int>(std::ceil(L - 1e-12));
    outer = std::max(outer, k);
    parts.try_emplace(k, xi.system()).first->second.set(g, a);
  }
  std::vector<Shell> out(static_cast<std::size_t>(outer + 1));
  for (int k = 0; k <= outer; ++k) out[static_cast<std::size_t>(k)].radius = k;
  for (const auto& [k, part] : parts) {
    Shell& s = out[static_cast<std::size_t>(k)];
    s.count = part.terms().size();
    switch (norm) {
      case ShellNorm::L2: s.norm = cc::norm_2(part); break;
      case ShellNorm::Alpha: s.norm = cc::norm_alpha(part); break;
      case ShellNorm::Linf: s.norm = cc::norm_linf(part); break;
    }
  }
  return out;
}

namespace {

CommIneqResult compare(const sys::SystemPtr& sys, const CcElement& f, const CcElement& xi,
                       std::size_t omega, bool twist_f) {
  const auto& S = *sys;
  const auto& G = *S.group;
  if (!S.algebra.commutative()) throw std::invalid_argument("inequality needs a commutative algebra");
  if (omega >= S.algebra.blocks()) throw std::invalid_argument("state index out of range");
  auto at = [omega](const Element& a) { return a.block(omega)(0, 0); };

  // (Λ(f)ξ)(h′) = Σ_{gh = h′} α_{h′}⁻¹(f(g)σ(g,h)) ξ(h)
  std::map<GroupElement, alg::Complex> image;
  std::map<GroupElement, double> conv;
  std::map<GroupElement, alg::Morphism> inv;
  auto alpha_inv = [&](const GroupElement& g) -> const alg::Morphism& {
    auto it = inv.find(g);
    if (it == inv.end()) it = inv.emplace(g, S.alpha_inv(g)).first;
    return it->second;
  };
  for (const auto& [h, x] : xi.terms()) {
    for (const auto& [g, a] : f.terms()) {
      const GroupElement hp = G.mul(g, h);
      image[hp] += at(alpha_inv(hp).apply(a * S.sigma(g, h))) * at(x);
      const double fw = std::abs(at(twist_f ? alpha_inv(g).apply(a) : a));
      conv[hp] += fw * std::abs(at(x));
    }
  }
  CommIneqResult r;
  double l = 0.0, q = 0.0;
  for (const auto& [hp, c] : conv) {
    PointComparison p;
    p.h = hp;
    p.lhs = std::abs(image[hp]);
    p.rhs = c;
    l += p.lhs * p.lhs;
    q += p.rhs * p.rhs;
    r.pointwise.push_back(std::move(p));
  }
  r.lhs = std::sqrt(l);
  r.rhs = std::sqrt(q);
  r.residual = r.rhs - r.lhs;
  r.holds = r.residual >= -1e-12;
  return r;
}

}  // namespace

CommIneqResult commutative_inequality_check(const sys::SystemPtr& sys, const CcElement& f,
                                            const CcElement& xi, std::size_t omega) {
  const auto& S = *sys;
  if (!S.algebra.commutative()) throw std::invalid_argument("inequality needs a commutative algebra");
  for (const auto& s : S.group->basic_generators()) {
    const alg::Morphism as = S.alpha(s);
    for (const auto& [g, a] : f.terms())
      if (alg::distance(as.apply(a), a) > 1e-10)
        throw std::invalid_argument("f(" + S.group->to_string(g) + ") is not fixed by the action");
  }
  return compare(sys, f, xi, omega, false);
}

CommIneqResult commutative_inequality_experimental(const sys::SystemPtr& sys, const CcElement& f,
                                                   const CcElement& xi, std::size_t omega) {
  return compare(sys, f, xi, omega, true);
}

}  // namespace twisted::decay
