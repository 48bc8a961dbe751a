#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "internal.hpp"
#include "twisted/decay.hpp"
#include "twisted/hilbmod.hpp"
#include "twisted/ideals.hpp"
#include "twisted/multipliers.hpp"
#include "twisted/summation.hpp"

namespace twisted::cli {

using cc::CcElement;
using detail::param;
using grp::GroupElement;

namespace {

struct Context {
  sys::SystemPtr sys;
  json params;
  std::uint64_t seed = 0;
  json out = json::object();
  std::optional<CsvTable> csv;
  bool ok = true;

  const grp::Group& G() const { return *sys->group; }
  // Records a named check; any failure turns the run into a violation.
  void check(const std::string& name, bool passed) {
    out["checks"][name] = passed;
    ok = ok && passed;
  }
};

json system_json(const sys::TwistedSystem& S) {
  return {{"algebra", S.algebra.dims},
          {"group", S.group->name()},
          {"finite", S.group->is_finite()},
          {"provenance", S.provenance}};
}

json validation_json(const sys::ValidationReport& r) {
  json out = {{"action", r.action},
              {"cocycle", r.cocycle},
              {"normalization", r.normalization},
              {"unitarity", r.unitarity},
              {"triples", r.triples},
              {"max_violation", r.max_violation()},
              {"witness", r.witness},
              {"passed", r.passed}};
  return out;
}

std::vector<GroupElement> sample_support(const grp::Group& G, double radius) {
  return G.is_finite() ? G.elements() : G.ball(radius);
}

CcElement element_param(Context& c, const char* key, double default_radius, std::mt19937_64& rng) {
  if (c.params.contains(key)) return detail::parse_cc(c.params[key], c.sys, rng);
  return cc::random_cc(c.sys, sample_support(c.G(), default_radius), rng);
}

std::vector<double> radii_param(Context& c, const char* key, std::vector<double> fallback) {
  return param<std::vector<double>>(c.params, key, std::move(fallback));
}

std::vector<double> default_error_radii(const grp::Group& G) {
  return G.is_finite() ? std::vector<double>{cc::full_radius(G)} : std::vector<double>{8.0};
}

void exp_validate(Context& c) {
  const auto r = sys::validate_default(*c.sys, param<double>(c.params, "radius", 3.0), c.seed);
  c.out["validation"] = validation_json(r);
  c.check("system", r.passed);
}

void exp_arithmetic(Context& c) {
  const auto& S = *c.sys;
  const auto& G = c.G();
  std::mt19937_64 rng(c.seed);
  const int triples = param<int>(c.params, "triples", 200);
  const double radius = param<double>(c.params, "radius", 2.0);
  const double tol = param<double>(c.params, "tol", 1e-10);
  const auto supp = sample_support(G, radius);
  double assoc = 0, distrib = 0, invol = 0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < triples; ++t) {
    const CcElement f = cc::random_cc(c.sys, supp, rng), g = cc::random_cc(c.sys, supp, rng),
                    h = cc::random_cc(c.sys, supp, rng);
    const alg::Complex z(u(rng), u(rng));
    using cc::twisted_mul;
    assoc = std::max(assoc, cc::norm_linf(twisted_mul(twisted_mul(f, g), h) - twisted_mul(f, twisted_mul(g, h))));
    distrib = std::max(distrib, cc::norm_linf(twisted_mul(f, g + h) - twisted_mul(f, g) - twisted_mul(f, h)));
    distrib = std::max(distrib, cc::norm_linf(twisted_mul(f + g, h) - twisted_mul(f, h) - twisted_mul(g, h)));
    invol = std::max(invol, cc::norm_linf(cc::star(cc::star(f)) - f));
    invol = std::max(invol, cc::norm_linf(cc::star(twisted_mul(f, g)) - twisted_mul(cc::star(g), cc::star(f))));
    invol = std::max(invol, cc::norm_linf(cc::star(z * f) - std::conj(z) * cc::star(f)));
  }
  c.out["associativity"] = assoc;
  c.out["distributivity"] = distrib;
  c.out["involution"] = invol;
  c.check("associativity", assoc <= tol);
  c.check("distributivity", distrib <= tol);
  c.check("involution", invol <= tol);

  const int ex = param<int>(c.params, "expectation_samples", 100);
  std::vector<GroupElement> shifts = G.ball(G.is_finite() ? cc::full_radius(G) : 2.0);
  double e_pos = 0, e_cov = 0;
  for (int i = 0; i < ex; ++i) {
    const CcElement f = cc::random_cc(c.sys, supp, rng);
    e_pos = std::max(e_pos, alg::distance(cc::expectation(cc::twisted_mul(cc::star(f), f)), cc::alpha_inner(f)));
    const GroupElement& x = shifts[static_cast<std::size_t>(i) % shifts.size()];
    const CcElement dx = CcElement::delta(c.sys, x, S.unit());
    const CcElement conj = cc::twisted_mul(cc::twisted_mul(dx, f), cc::star(dx));
    e_cov = std::max(e_cov, alg::distance(cc::expectation(conj), S.alpha(x).apply(cc::expectation(f))));
  }
  c.out["expectation_positive"] = e_pos;
  c.out["expectation_covariance"] = e_cov;
  c.check("expectation_positive", e_pos <= tol);
  c.check("expectation_covariance", e_cov <= tol);

  if (G.is_finite() && G.order() <= 64) {
    const int pairs = param<int>(c.params, "regular_pairs", 100);
    const double R = cc::full_radius(G);
    double prod = 0, adj = 0;
    for (int i = 0; i < pairs; ++i) {
      const CcElement f = cc::random_cc(c.sys, supp, rng), g = cc::random_cc(c.sys, supp, rng);
      const auto mf = cc::compression_matrix(f, R).matrix;
      const auto mg = cc::compression_matrix(g, R).matrix;
      prod = std::max(prod, (cc::compression_matrix(cc::twisted_mul(f, g), R).matrix - mf * mg).cwiseAbs().maxCoeff());
      adj = std::max(adj, (cc::compression_matrix(cc::star(f), R).matrix - mf.adjoint()).cwiseAbs().maxCoeff());
    }
    c.out["regular_product"] = prod;
    c.out["regular_adjoint"] = adj;
    c.check("regular_product", prod <= tol);
    c.check("regular_adjoint", adj <= tol);
  }
}

json shells_json(const std::vector<decay::Shell>& shells) {
  json a = json::array();
  for (const auto& s : shells) a.push_back({{"radius", s.radius}, {"count", s.count}, {"norm", s.norm}});
  return a;
}

void exp_norms(Context& c) {
  std::mt19937_64 rng(c.seed);
  const CcElement f = element_param(c, "f", 2.0, rng);
  const auto length = grp::parse_length(param<std::string>(c.params, "length", "word"));
  const auto schedule = radii_param(c, "schedule", cc::default_schedule(c.G()));
  const auto b = cc::opnorm_bounds(f, schedule, length);
  const double linf = cc::norm_linf(f), alpha = cc::norm_alpha(f);
  c.out["f"] = detail::cc_json(f);
  c.out["lower"] = b.lower;
  c.out["upper"] = b.upper;
  c.out["linf"] = linf;
  c.out["alpha"] = alpha;
  json trace = json::array();
  CsvTable t{{"radius", "sigma_max"}, {}};
  for (const auto& [R, s] : b.trace) {
    trace.push_back({{"radius", R}, {"sigma_max", s}});
    t.rows.push_back({R, s});
  }
  c.out["trace"] = trace;
  c.check("linf_le_alpha", linf <= alpha + 1e-12);
  c.check("alpha_le_upper", alpha <= b.upper + 1e-12);
  c.check("lower_le_upper", b.lower <= b.upper + 1e-9);
  const CcElement ff = cc::twisted_mul(f, f);
  c.out["tail_profile_f"] = shells_json(decay::tail_profile(f, decay::ShellNorm::L2, c.G().default_length()));
  c.out["tail_profile_ff"] = shells_json(decay::tail_profile(ff, decay::ShellNorm::L2, c.G().default_length()));
  c.csv = std::move(t);
}

json convergence_json(const sum::ConvergenceReport& r, const sum::SummingNet& net) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    json j = {{"index", row.index},
              {"l1_error", row.l1_error},
              {"alpha_error", row.alpha_error},
              {"tail_allowance", row.tail_allowance},
              {"opnorm_error", row.opnorm_error},
              {"pointwise_max", row.pointwise_max},
              {"declared_bound", net.declared_bounds[i]},
              {"description", net.members[i].description}};
    if (i < net.truncation_radius.size()) j["truncation_radius"] = net.truncation_radius[i];
    rows.push_back(std::move(j));
  }
  return {{"kind", net.kind},
          {"radii", r.radii},
          {"rows", rows},
          {"pointwise_monotone", r.pointwise_monotone},
          {"converged", r.converged},
          {"target", r.target}};
}

CsvTable convergence_csv(const sum::ConvergenceReport& r) {
  CsvTable t;
  t.header = {"index", "l1_error", "alpha_error"};
  for (double R : r.radii) t.header.push_back("opnorm_error@" + format_double(R));
  t.header.push_back("pointwise_max");
  for (const auto& row : r.rows) {
    std::vector<double> v{row.index, row.l1_error, row.alpha_error};
    v.insert(v.end(), row.opnorm_error.begin(), row.opnorm_error.end());
    v.push_back(row.pointwise_max);
    t.rows.push_back(std::move(v));
  }
  return t;
}

// ‖φ·a − a‖ = (1 − φ)‖a‖ for real φ ∈ [0,1]; compares with the measured ℓ¹ error.
double closed_form_l1(const mult::Multiplier& T, const CcElement& f) {
  double s = 0.0;
  const auto& G = *f.system()->group;
  for (const auto& [g, a] : f.terms()) {
    const bool inside = !T.g_support || std::binary_search(T.g_support->begin(), T.g_support->end(), g);
    const double phi = inside ? std::real(T(g, f.system()->unit()).block(0)(0, 0)) : 0.0;
    (void)G;
    s += (1.0 - phi) * alg::norm(a);
  }
  return s;
}

void run_net(Context& c, const sum::SummingNet& net, const CcElement& f, bool closed_form) {
  const auto radii = radii_param(c, "radii", default_error_radii(c.G()));
  const double target = param<double>(c.params, "target", 1e-6);
  const auto report = sum::run_convergence(net, f, radii, sum::default_point_samples(f, c.seed), target);
  c.out["f"] = detail::cc_json(f);
  c.out["convergence"] = convergence_json(report, net);
  if (closed_form) {
    double worst = 0.0;
    for (std::size_t i = 0; i < net.members.size(); ++i) {
      const double allowance = report.rows[i].tail_allowance;
      worst = std::max(worst, std::abs(report.rows[i].l1_error - allowance - closed_form_l1(net.members[i], f)));
    }
    c.out["closed_form_residual"] = worst;
    c.check("closed_form_l1", worst <= 1e-12);
  }
  c.csv = convergence_csv(report);
}

void contraction_check(Context& c, const sum::SummingNet& net, std::mt19937_64& rng) {
  const auto& G = c.G();
  if (!G.is_finite() || G.order() > 64) return;
  const int samples = param<int>(c.params, "contraction_samples", 20);
  const double R = cc::full_radius(G);
  double worst = -1e300;
  for (int i = 0; i < samples; ++i) {
    const CcElement f = cc::random_cc(c.sys, G.elements(), rng);
    const double base = cc::compressed_norm(f, R, G.default_length());
    for (const auto& T : net.members)
      worst = std::max(worst, cc::compressed_norm(mult::apply_multiplier(T, f), R, G.default_length()) - base);
  }
  c.out["contraction_excess"] = worst;
  c.check("contraction", worst <= 1e-9);
}

void exp_fejer(Context& c) {
  std::mt19937_64 rng(c.seed);
  const auto& G = c.G();
  if (!G.has_folner()) throw ConfigError("fejer needs a group with a shipped Folner sequence");
  const auto indices = param<std::vector<int>>(c.params, "indices", {2, 4, 8, 16});
  const CcElement f = element_param(c, "f", 2.0, rng);
  const auto net = sum::fejer_net(c.sys, indices);
  json pd = json::array();
  bool pd_ok = true;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto set = G.is_finite() ? G.elements() : G.ball(indices[i]);
    const auto r = mult::pd_check([&](const GroupElement& g) { return net.members[i](g, c.sys->unit()).block(0)(0, 0); },
                                  set, G);
    pd.push_back({{"index", indices[i]}, {"min_eigenvalue", r.min_eigenvalue}, {"pd", r.is_pd}});
    pd_ok = pd_ok && r.is_pd;
  }
  c.out["positive_definite"] = pd;
  c.check("positive_definite", pd_ok);
  contraction_check(c, net, rng);
  run_net(c, net, f, true);
}

void exp_abel_poisson(Context& c) {
  std::mt19937_64 rng(c.seed);
  const auto& G = c.G();
  if (G.spec().family != grp::Family::Zd) throw ConfigError("abel-poisson runs on Z^d");
  const auto length = grp::parse_length(param<std::string>(c.params, "length", "l1"));
  const auto rs = param<std::vector<double>>(c.params, "r", {0.5, 0.9, 0.99, 0.999});
  const double eps = param<double>(c.params, "eps", 1e-8);
  const double pd_radius = param<double>(c.params, "pd_radius", 4.0);
  const CcElement f = element_param(c, "f", 1.0, rng);
  sum::SummingNet net;
  try {
    net = sum::abel_poisson_net(c.sys, length, rs, eps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json pd = json::array();
  bool pd_ok = true;
  const auto set = G.ball(pd_radius);
  for (double r : rs) {
    const auto res = mult::pd_check([&](const GroupElement& g) { return alg::Complex(std::pow(r, G.length(g, length))); },
                                    set, G);
    pd.push_back({{"r", r}, {"min_eigenvalue", res.min_eigenvalue}, {"pd", res.is_pd}});
    pd_ok = pd_ok && res.is_pd;
  }
  c.out["positive_definite"] = pd;
  c.out["tail_bounds"] = net.tail_bound;
  c.check("positive_definite", pd_ok);
  run_net(c, net, f, true);
}

sum::ApproxData uniform_data(const sys::SystemPtr& sys, const std::vector<GroupElement>& F) {
  sum::ApproxData d;
  const double w = 1.0 / std::sqrt(static_cast<double>(F.size()));
  for (const auto& g : F) {
    hm::ModuleVector v{{w * sys->unit()}};
    d.xi.emplace(g, v);
    d.eta.emplace(g, v);
  }
  return d;
}

sum::SummingNet uniform_net(const sys::SystemPtr& sys, const std::string& sets, const std::vector<int>& indices) {
  const auto& G = *sys->group;
  std::vector<sum::ApproxData> data;
  for (int n : indices) {
    if (sets == "folner") data.push_back(uniform_data(sys, G.folner(n)));
    else if (sets == "balls") data.push_back(uniform_data(sys, G.ball(n)));
    else throw ConfigError("approx-net sets must be 'folner' or 'balls'");
  }
  auto net = sum::approx_data_net(hm::trivial_rep(sys), data);
  for (std::size_t i = 0; i < indices.size(); ++i) net.index[i] = indices[i];
  return net;
}

void exp_approx_net(Context& c) {
  std::mt19937_64 rng(c.seed);
  const auto& G = c.G();
  const std::string sets = param<std::string>(c.params, "sets", G.has_folner() ? "folner" : "balls");
  if (sets == "folner" && !G.has_folner()) throw ConfigError("no Folner sequence is shipped for " + G.name());
  const auto indices = param<std::vector<int>>(c.params, "indices", {1, 2, 4, 8});
  const CcElement f = element_param(c, "f", 1.0, rng);
  const auto rep = hm::trivial_rep(c.sys);
  const auto er = hm::validate_equivariant(rep, hm::default_samples(rep, rng));
  c.out["equivariant_max_violation"] = er.max_violation();
  c.check("equivariant_rep", er.passed);
  run_net(c, uniform_net(c.sys, sets, indices), f, false);
}

decay::Weight weight_param(Context& c) {
  const json w = c.params.value("weight", json{{"tag", "power"}, {"param", 1.0}});
  try {
    const auto tag = decay::parse_weight(param<std::string>(w, "tag", "power"));
    const double p = param<double>(w, "param", 1.0);
    if (w.contains("length"))
      return decay::make_weight(c.sys->group, tag, p, grp::parse_length(w["length"].get<std::string>()));
    return decay::make_weight(c.sys->group, tag, p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("weight: ") + e.what());
  }
}

bool trivial_action(const sys::TwistedSystem& S) {
  for (const auto& s : S.group->basic_generators())
    if (!S.alpha(s).is_identity()) return false;
  return true;
}

void exp_decay(Context& c) {
  const auto w = weight_param(c);
  const double radius = param<double>(c.params, "radius", 2.0);
  const int budget = param<int>(c.params, "budget", 16);
  const auto p = decay::decay_constant_probe(c.sys, w, radius, budget, c.seed);
  c.out["weight"] = {{"description", w.description},
                     {"inverse_l2", w.inverse_l2 ? json(*w.inverse_l2) : json(nullptr)}};
  c.out["c_lower"] = p.c_lower;
  c.out["ratios"] = p.ratios;
  c.out["ratios_2kappa"] = p.ratios_2kappa;
  c.out["witness"] = p.witness;
  c.out["radius"] = p.radius;
  c.out["compression_radius"] = p.compression_radius;
  c.out["l1_route_slack"] = p.l1_route_slack;
  c.check("l1_route", p.l1_route_holds);
  if (c.sys->algebra.commutative() && trivial_action(*c.sys)) {
    const auto chain = decay::commu_chain_check(c.sys, w, radius, budget, c.seed);
    c.out["commu_chain"] = {{"c_grp", chain.c_grp}, {"worst_slack", chain.worst_slack}};
    c.check("commu_chain", chain.holds);
  }
  CsvTable t{{"sample", "ratio_alpha_kappa", "ratio_2kappa"}, {}};
  for (std::size_t i = 0; i < p.ratios.size(); ++i)
    t.rows.push_back({static_cast<double>(i), p.ratios[i], p.ratios_2kappa[i]});
  c.csv = std::move(t);
}

std::vector<GroupElement> set_param(Context& c) {
  const json s = c.params.value("set", json{{"ball", 1.0}});
  if (s.contains("ball")) return c.G().ball(s["ball"].get<double>());
  if (s.contains("elements")) {
    std::vector<GroupElement> out;
    for (const auto& e : s["elements"]) out.push_back(detail::parse_group_element(c.G(), e));
    if (out.empty()) throw ConfigError("content set must be nonempty");
    return out;
  }
  throw ConfigError("set needs 'ball' or 'elements'");
}

void exp_content(Context& c) {
  const auto E = set_param(c);
  decay::ContentOptions o;
  o.sample_budget = param<int>(c.params, "budget", 16);
  o.ascent_sweeps = param<int>(c.params, "sweeps", 4);
  o.seed = c.seed;
  if (c.params.contains("radius")) o.radius = c.params["radius"].get<double>();
  const auto est = decay::content_probe(c.sys, E, o);
  json set = json::array();
  for (const auto& g : est.set) set.push_back(c.G().to_string(g));
  c.out["set"] = set;
  c.out["lower"] = est.lower;
  c.out["upper_card"] = est.upper_card;
  c.out["upper_sqrt"] = est.upper_sqrt ? json(*est.upper_sqrt) : json(nullptr);
  c.out["radius"] = est.radius;
  c.out["budget"] = est.sample_budget;
  if (est.witness) c.out["witness"] = detail::cc_json(*est.witness);
  c.check("below_card", est.lower <= est.upper_card + 1e-9);
  if (est.upper_sqrt) {
    c.check("below_sqrt", est.lower <= *est.upper_sqrt + 1e-9);
    const int checks = param<int>(c.params, "random_checks", 50);
    std::mt19937_64 rng(c.seed ^ 0xc0ffeeULL);
    double worst = -1e300;
    for (int i = 0; i < checks; ++i) {
      const CcElement f = cc::random_cc(c.sys, est.set, rng);
      worst = std::max(worst, cc::compressed_norm(f, est.radius, c.G().default_length()) - *est.upper_sqrt * cc::norm_2(f));
    }
    c.out["random_check_excess"] = worst;
    c.check("random_sqrt_bound", worst <= 1e-9);
  }
}

void exp_commutative(Context& c) {
  const auto& S = *c.sys;
  const auto& G = c.G();
  if (!S.algebra.commutative()) throw ConfigError("commutative-inequality needs a commutative algebra");
  const bool fixed = trivial_action(S);
  if (!fixed && !G.is_finite()) throw ConfigError("commutative-inequality with a nontrivial action needs a finite group");
  const int configs = param<int>(c.params, "configurations", 200);
  const double radius = param<double>(c.params, "radius", 2.0);
  const bool experimental = param<bool>(c.params, "experimental", false);
  const auto supp = sample_support(G, radius);
  std::mt19937_64 rng(c.seed);
  double worst = 1e300;
  std::size_t violations = 0, checks = 0, counterexamples = 0;
  double exp_worst = 1e300;
  for (int k = 0; k < configs; ++k) {
    CcElement f = cc::random_cc(c.sys, supp, rng);
    if (!fixed) {
      CcElement avg(c.sys);
      for (const auto& [g, a] : f.terms()) {
        alg::Element s = alg::Element::zero(S.algebra);
        for (const auto& x : G.elements()) s += S.alpha(x).apply(a);
        avg.set(g, (1.0 / static_cast<double>(G.order())) * s);
      }
      f = avg;
    }
    const CcElement xi = cc::random_cc(c.sys, supp, rng);
    for (std::size_t w = 0; w < S.algebra.blocks(); ++w) {
      const auto r = decay::commutative_inequality_check(c.sys, f, xi, w);
      worst = std::min(worst, r.residual);
      ++checks;
      if (!r.holds) ++violations;
      if (experimental) {
        const CcElement g = cc::random_cc(c.sys, supp, rng);
        const auto e = decay::commutative_inequality_experimental(c.sys, g, xi, w);
        exp_worst = std::min(exp_worst, e.residual);
        if (!e.holds) ++counterexamples;
      }
    }
  }
  c.out["evaluations"] = checks;
  c.out["min_residual"] = worst;
  c.out["violations"] = violations;
  if (experimental) c.out["experimental"] = {{"min_residual", exp_worst}, {"counterexamples", counterexamples}};
  c.check("inequality", violations == 0);
}

std::vector<std::pair<std::string, sum::SummingNet>> shipped_nets(const sys::SystemPtr& sys) {
  const auto& G = *sys->group;
  std::vector<std::pair<std::string, sum::SummingNet>> nets;
  if (G.has_folner()) nets.emplace_back("fejer", sum::fejer_net(sys, {1, 2, 4}));
  if (G.spec().family == grp::Family::Zd) {
    nets.emplace_back("abel-poisson-l1", sum::abel_poisson_net(sys, grp::LengthTag::L1, {0.5, 0.9}));
    nets.emplace_back("abel-poisson-l2sq", sum::abel_poisson_net(sys, grp::LengthTag::L2Squared, {0.5, 0.9}));
  }
  nets.emplace_back("approx-balls", uniform_net(sys, "balls", {0, 1, 2}));
  return nets;
}

json ideal_json(const ideals::InvariantIdeal& J) { return J.blocks; }

double preservation(const sys::SystemPtr& sys, const ideals::InvariantIdeal& J, int samples, std::mt19937_64& rng,
                    json& detail_out) {
  const auto supp = sample_support(*sys->group, 1.0);
  std::vector<CcElement> fs;
  for (int i = 0; i < samples; ++i) fs.push_back(ideals::random_in_ideal(sys, J, supp, rng));
  double worst = 0.0;
  for (const auto& [name, net] : shipped_nets(sys)) {
    double w = 0.0;
    for (const auto& T : net.members) w = std::max(w, ideals::preservation_defect(T, J, fs));
    detail_out[name] = w;
    worst = std::max(worst, w);
  }
  return worst;
}

void exp_ideals(Context& c) {
  const auto& S = *c.sys;
  std::mt19937_64 rng(c.seed);
  const int samples = param<int>(c.params, "samples", 100);
  const auto orbits = ideals::block_orbits(S);
  const auto list = ideals::enumerate_invariant_ideals(S);
  c.out["orbits"] = orbits;
  c.out["count"] = list.size();
  const auto supp = sample_support(c.G(), 1.0);
  json per = json::array();
  bool closure_ok = true, e_ok = true, quotient_ok = true, preserve_ok = true;
  for (const auto& J : list) {
    json j = {{"blocks", ideal_json(J)}, {"invariant", ideals::is_invariant(S, J)}};
    double closure = 0.0;
    for (int i = 0; i < std::min(samples, 20); ++i) {
      const CcElement f = ideals::random_in_ideal(c.sys, J, supp, rng);
      const CcElement h = cc::random_cc(c.sys, supp, rng);
      for (const auto& p : {cc::twisted_mul(h, f), cc::twisted_mul(f, h)})
        for (const auto& [g, a] : p.terms()) closure = std::max(closure, ideals::outside_mass(a, J));
    }
    j["closure_defect"] = closure;
    closure_ok = closure_ok && closure <= 1e-12;

    std::vector<CcElement> gens{ideals::random_in_ideal(c.sys, J, {c.G().identity()}, rng)};
    for (const auto& s : c.G().generators()) gens.push_back(ideals::random_in_ideal(c.sys, J, {s}, rng));
    const auto e = ideals::e_invariance_probe(gens, std::min(samples, 20), c.seed);
    j["e_invariance"] = {{"reference", ideal_json(e.reference)}, {"samples", e.samples}, {"violations", e.violations}};
    e_ok = e_ok && e.passed;

    if (J.blocks.size() < S.algebra.blocks()) {
      const auto Q = ideals::quotient_system(c.sys, J);
      const auto v = sys::validate_default(*Q.system, 2.0, c.seed);
      double hom = 0.0;
      for (int i = 0; i < std::min(samples, 20); ++i) {
        const CcElement f1 = cc::random_cc(c.sys, supp, rng), f2 = cc::random_cc(c.sys, supp, rng);
        hom = std::max(hom, cc::norm_linf(Q.q(cc::twisted_mul(f1, f2)) - cc::twisted_mul(Q.q(f1), Q.q(f2))));
      }
      j["quotient"] = {{"algebra", Q.system->algebra.dims}, {"validated", v.passed}, {"homomorphism_defect", hom}};
      quotient_ok = quotient_ok && v.passed && hom <= 1e-10;
    }
    json pres = json::object();
    const double d = preservation(c.sys, J, samples, rng, pres);
    j["preservation"] = pres;
    preserve_ok = preserve_ok && d <= 1e-12;
    per.push_back(std::move(j));
  }
  c.out["ideals"] = per;

  // The algebraic ideal generated by 1⊙δ_s with s ≠ e: E of its elements leaves E(gen) = 0.
  const auto gens = c.G().generators();
  if (!gens.empty()) {
    const auto e = ideals::e_invariance_probe({CcElement::delta(c.sys, gens.front(), S.unit())}, 10, c.seed);
    c.out["delta_generator_probe"] = {{"generator", c.G().to_string(gens.front())},
                                      {"violations", e.violations},
                                      {"witness", e.witness}};
  }
  c.check("ideal_closure", closure_ok);
  c.check("e_invariance", e_ok);
  c.check("quotients", quotient_ok);
  c.check("net_preservation", preserve_ok);
}

void exp_psl(Context& c) {
  const auto& S = *c.sys;
  if (S.group->spec().family != grp::Family::FreeProductZ2Z3 || S.algebra.dims != std::vector<int>{1, 1})
    throw ConfigError("psl-preset needs the psl2z system");
  std::mt19937_64 rng(c.seed);
  const auto v = sys::validate_default(S, 3.0, c.seed);
  c.out["validation"] = validation_json(v);
  c.check("section_cocycle", v.passed);

  const CcElement s = CcElement::delta(c.sys, c.G().identity(), alg::Element::diagonal({1.0, -1.0}));
  const auto split = ideals::central_projection_split(s, ideals::default_commutation_list(c.sys));
  c.out["p"] = detail::cc_json(split.p);
  c.out["q"] = detail::cc_json(split.q);
  c.out["residuals"] = {{"p_idempotent", split.p_idempotent},
                        {"p_selfadjoint", split.p_selfadjoint},
                        {"q_idempotent", split.q_idempotent},
                        {"orthogonal", split.orthogonal},
                        {"sum", split.sum},
                        {"commutation", split.commutation}};
  c.check("projections", split.max_residual() <= 1e-10);

  const auto Jp = ideals::generated_ideal(S, {cc::expectation(split.p)});
  const auto Jq = ideals::generated_ideal(S, {cc::expectation(split.q)});
  c.out["ideal_p"] = ideal_json(Jp);
  c.out["ideal_q"] = ideal_json(Jq);
  c.check("disjoint", ideals::intersect(Jp, Jq).blocks.empty());
  const int samples = param<int>(c.params, "samples", 100);
  json pp = json::object(), pq = json::object();
  const double dp = preservation(c.sys, Jp, samples, rng, pp);
  const double dq = preservation(c.sys, Jq, samples, rng, pq);
  c.out["preservation"] = {{"p", pp}, {"q", pq}};
  c.check("net_preservation", std::max(dp, dq) <= 1e-12);
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"validate", exp_validate},
      {"arithmetic-suite", exp_arithmetic},
      {"norms", exp_norms},
      {"fejer", exp_fejer},
      {"abel-poisson", exp_abel_poisson},
      {"approx-net", exp_approx_net},
      {"decay-probe", exp_decay},
      {"content-probe", exp_content},
      {"commutative-inequality", exp_commutative},
      {"ideals", exp_ideals},
      {"psl-preset", exp_psl},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> k;
    for (const auto& [name, r] : runners()) k.push_back(name);
    return k;
  }();
  return kinds;
}

RunResult run_experiment(const ExperimentConfig& config) {
  auto it = runners().find(config.kind);
  if (it == runners().end()) throw ConfigError("unknown experiment kind: " + config.kind);
  Context c;
  c.sys = build_system(config.system);
  c.params = config.params.is_null() ? json::object() : config.params;
  c.seed = config.seed;

  RunResult r;
  r.report = {{"experiment", config.kind},
              {"seed", config.seed},
              {"system", system_json(*c.sys)},
              {"params", c.params}};
  if (config.kind != "validate" && config.kind != "psl-preset") {
    const auto v = sys::validate_default(*c.sys, 2.0, config.seed);
    if (!v.passed) {
      r.report["validation"] = validation_json(v);
      r.report["status"] = "violation";
      r.status = 2;
      return r;
    }
  }
  try {
    it->second(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  r.report["results"] = c.out;
  r.report["status"] = c.ok ? "pass" : "violation";
  r.status = c.ok ? 0 : 2;
  r.csv = std::move(c.csv);
  return r;
}

}  // namespace twisted::cli
