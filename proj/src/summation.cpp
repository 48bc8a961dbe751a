#include "twisted/summation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "twisted/parallel.hpp"

namespace twisted::sum {

using alg::Element;

double fejer_value(const grp::Group& G, const GroupElement& g, const std::vector<GroupElement>& F) {
  return static_cast<double>(grp::translate_overlap(G, g, F)) / static_cast<double>(F.size());
}

SummingNet fejer_net(const sys::SystemPtr& sys, const std::vector<int>& indices) {
  const auto& G = *sys->group;
  if (!G.has_folner()) throw std::domain_error("no Folner sequence is shipped for " + G.name());
  SummingNet net;
  net.kind = "fejer";
  for (int N : indices) {
    // On finite groups the Følner sets are the whole group; balls give nontrivial kernels.
    const auto F = G.is_finite() ? G.ball(N) : G.folner(N);
    std::set<GroupElement> diffs;
    for (const auto& x : F)
      for (const auto& y : F) diffs.insert(G.mul(x, G.inverse(y)));
    std::map<GroupElement, double> table;
    for (const auto& g : diffs) table.emplace(g, fejer_value(G, g, F));
    std::vector<GroupElement> support(diffs.begin(), diffs.end());
    auto phi = [table](const GroupElement& g) -> alg::Complex {
      auto it = table.find(g);
      return it == table.end() ? 0.0 : it->second;
    };
    net.index.push_back(N);
    net.members.push_back(mult::scalar_multiplier(phi, 1.0, "fejer(" + std::to_string(N) + ")", support));
    net.declared_bounds.push_back(1.0);
  }
  return net;
}

namespace {

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

// Number of points of Z^d with |g|₁ = k.
double l1_shell_count(int d, long long k) {
  if (k == 0) return 1.0;
  double s = 0.0;
  for (int i = 1; i <= d && i <= k; ++i)
    s += std::exp(i * std::log(2.0) + log_binom(d, i) + log_binom(static_cast<double>(k - 1), i - 1));
  return s;
}

// Number of points of Z^d with |g|₂² = k, for k <= K.
std::vector<double> l2sq_shell_counts(int d, long long K) {
  std::vector<double> c(static_cast<std::size_t>(K + 1), 0.0);
  c[0] = 1.0;
  for (int dim = 0; dim < d; ++dim) {
    std::vector<double> next(c.size(), 0.0);
    for (long long k = 0; k <= K; ++k) {
      if (c[static_cast<std::size_t>(k)] == 0.0) continue;
      for (long long n = 0; k + n * n <= K; ++n)
        next[static_cast<std::size_t>(k + n * n)] += c[static_cast<std::size_t>(k)] * (n == 0 ? 1.0 : 2.0);
    }
    c.swap(next);
  }
  return c;
}

// Cutoff K with a geometric bound on Σ_{k>K} (2k+1)^d r^k below 1e-20, and that bound.
std::pair<long long, double> shell_cutoff(int d, double r) {
  for (long long K = 16;; K *= 2) {
    const double q = r * std::pow(1.0 + 2.0 / (2.0 * K + 1.0), d);
    if (q >= 1.0) continue;
    const double term = std::exp(d * std::log(2.0 * K + 1.0) + K * std::log(r));
    const double rest = term * q / (1.0 - q);
    if (rest < 1e-20) return {K, rest};
  }
}

}  // namespace

// l1 and l2sq use exact shell counts; l2 is bounded through |g|₂ ≥ |g|₁/√d, giving
// Σ_{|g|₂>R} r^{|g|₂} ≤ Σ_{|g|₁>R} (r^{1/√d})^{|g|₁}.
double abel_poisson_tail(int d, grp::LengthTag length, double r, long long R) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Abel-Poisson parameter r must lie in (0,1)");
  if (length == grp::LengthTag::L2) return abel_poisson_tail(d, grp::LengthTag::L1, std::pow(r, 1.0 / std::sqrt(d)), R);
  if (length != grp::LengthTag::L1 && length != grp::LengthTag::L2Squared)
    throw std::invalid_argument("Abel-Poisson kernels use the l1, l2 or l2sq length");
  const auto [K, rest] = shell_cutoff(d, r);
  if (R >= K) return rest;
  long double s = 0.0L;
  if (length == grp::LengthTag::L1) {
    for (long long k = K; k > R; --k) s += static_cast<long double>(l1_shell_count(d, k)) * std::pow(static_cast<long double>(r), k);
  } else {
    const auto c = l2sq_shell_counts(d, K);
    for (long long k = K; k > R; --k) s += static_cast<long double>(c[static_cast<std::size_t>(k)]) * std::pow(static_cast<long double>(r), k);
  }
  return static_cast<double>(s) + rest;
}

long long abel_poisson_radius(int d, grp::LengthTag length, double r, double eps) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Abel-Poisson parameter r must lie in (0,1)");
  const double rr = length == grp::LengthTag::L2 ? std::pow(r, 1.0 / std::sqrt(d)) : r;
  const auto [K, rest] = shell_cutoff(d, rr);
  if (rest >= eps) throw std::runtime_error("tail cutoff failed to certify");
  std::vector<double> counts;
  if (length == grp::LengthTag::L2Squared) counts = l2sq_shell_counts(d, K);
  // Suffix sums from the cutoff down; the first radius whose tail is below eps wins.
  std::vector<long double> tail(static_cast<std::size_t>(K + 1), 0.0L);
  long double s = rest;
  for (long long k = K; k >= 0; --k) {
    tail[static_cast<std::size_t>(k)] = s;  // Σ_{j>k}
    const double c = length == grp::LengthTag::L2Squared ? counts[static_cast<std::size_t>(k)] : l1_shell_count(d, k);
    s += static_cast<long double>(c) * std::pow(static_cast<long double>(rr), k);
  }
  for (long long R = 0; R <= K; ++R)
    if (tail[static_cast<std::size_t>(R)] < eps) return R;
  return K;
}

SummingNet abel_poisson_net(const sys::SystemPtr& sys, grp::LengthTag length,
                            const std::vector<double>& r_schedule, double eps) {
  const auto& G = *sys->group;
  if (G.spec().family != grp::Family::Zd) throw std::domain_error("Abel-Poisson nets are shipped on Z^d only");
  const int d = G.spec().params[0];
  SummingNet net;
  net.kind = "abel-poisson";
  for (double r : r_schedule) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Abel-Poisson parameter r must lie in (0,1)");
    const long long R = abel_poisson_radius(d, length, r, eps);
    const double tail = abel_poisson_tail(d, length, r, R);
    auto gp = sys->group;
    auto phi = [gp, length, r, R](const GroupElement& g) -> alg::Complex {
      const double L = gp->length(g, length);
      if (L > static_cast<double>(R) + 1e-9) return 0.0;
      return std::pow(r, L);
    };
    std::ostringstream os;
    os << "abel-poisson(" << grp::length_name(length) << ", r=" << r << ")";
    net.index.push_back(r);
    net.members.push_back(mult::scalar_multiplier(phi, 1.0, os.str()));
    net.declared_bounds.push_back(1.0);
    net.truncation_radius.push_back(static_cast<double>(R));
    net.tail_bound.push_back(tail);
  }
  return net;
}

double family_norm(const std::map<GroupElement, hm::ModuleVector>& xi) {
  if (xi.empty()) return 0.0;
  Element s = hm::inner(xi.begin()->second, xi.begin()->second);
  for (auto it = std::next(xi.begin()); it != xi.end(); ++it) s += hm::inner(it->second, it->second);
  return std::sqrt(alg::norm(s));
}

Multiplier approx_data_multiplier(const hm::EquivariantRep& rep, const ApproxData& data) {
  const auto& G = *rep.system->group;
  std::set<GroupElement> support;
  for (const auto& [h, x] : data.xi)
    for (const auto& [k, y] : data.eta) support.insert(G.mul(h, G.inverse(k)));
  Multiplier T;
  T.recipe = mult::Recipe::MatrixCoeff;
  const Element zero = Element::zero(rep.system->algebra);
  T.eval = [rep, data, zero](const GroupElement& g, const Element& a) {
    const auto& G = *rep.system->group;
    const GroupElement gi = G.inverse(g);
    const hm::ModuleOperator r = rep.rho(a);
    Element s = zero;
    for (const auto& [h, x] : data.xi) {
      auto it = data.eta.find(G.mul(gi, h));
      if (it == data.eta.end()) continue;
      s += hm::inner(x, r.apply(rep.v(g, it->second)));
    }
    return s;
  };
  T.g_support = std::vector<GroupElement>(support.begin(), support.end());
  T.declared_bound = family_norm(data.xi) * family_norm(data.eta);
  T.description = "approx-data";
  return T;
}

SummingNet approx_data_net(const hm::EquivariantRep& rep, const std::vector<ApproxData>& data) {
  SummingNet net;
  net.kind = "approx-data";
  for (std::size_t i = 0; i < data.size(); ++i) {
    net.index.push_back(static_cast<double>(i));
    net.members.push_back(approx_data_multiplier(rep, data[i]));
    net.declared_bounds.push_back(net.members.back().declared_bound);
  }
  return net;
}

std::vector<PointSample> default_point_samples(const CcElement& f, std::uint64_t seed) {
  const auto& S = *f.system();
  std::set<GroupElement> gs;
  for (const auto& g : f.support()) gs.insert(g);
  for (const auto& g : S.group->generators()) gs.insert(g);
  gs.insert(S.group->identity());
  std::mt19937_64 rng(seed);
  std::vector<PointSample> out;
  for (const auto& g : gs) {
    out.push_back({g, S.unit()});
    out.push_back({g, alg::random_element(S.algebra, rng)});
  }
  return out;
}

ConvergenceReport run_convergence(const SummingNet& net, const CcElement& f,
                                  const std::vector<double>& radii,
                                  const std::vector<PointSample>& samples, double target) {
  ConvergenceReport rep;
  rep.radii = radii;
  rep.target = target;
  const std::size_t n = net.members.size();
  rep.rows.resize(n);
  rep.pointwise.assign(n, std::vector<double>(samples.size(), 0.0));
  const double finf = cc::norm_linf(f);
  const auto length = f.system()->group->default_length();
  parallel_for(n, [&](std::size_t i) {
    const Multiplier& T = net.members[i];
    const CcElement diff = mult::apply_multiplier(T, f) - f;
    ConvergenceRow row;
    row.index = net.index[i];
    row.tail_allowance = i < net.tail_bound.size() ? net.tail_bound[i] * finf : 0.0;
    row.l1_error = cc::norm_l1(diff) + row.tail_allowance;
    row.alpha_error = cc::norm_alpha(diff);
    for (double R : radii) row.opnorm_error.push_back(cc::compressed_norm(diff, R, length));
    for (std::size_t s = 0; s < samples.size(); ++s) {
      Element out = T(samples[s].g, samples[s].a);
      if (T.g_support && !std::binary_search(T.g_support->begin(), T.g_support->end(), samples[s].g))
        out = Element::zero(f.system()->algebra);
      const double e = alg::norm(out - samples[s].a);
      rep.pointwise[i][s] = e;
      row.pointwise_max = std::max(row.pointwise_max, e);
    }
    rep.rows[i] = std::move(row);
  });
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t s = 0; s < samples.size(); ++s)
      if (rep.pointwise[i][s] > rep.pointwise[i - 1][s] + 1e-12) rep.pointwise_monotone = false;
  rep.converged = n > 0 && rep.rows.back().pointwise_max < target;
  return rep;
}

}  // namespace twisted::sum
