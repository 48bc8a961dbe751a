#include "twisted/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twisted/parallel.hpp"
#include "twisted/spectral.hpp"
#include "twisted/tolerance.hpp"

namespace twisted::cc {

using alg::Element;

CcElement::CcElement(SystemPtr system) : sys_(std::move(system)) {
  if (!sys_) throw std::invalid_argument("CcElement needs a system");
}

CcElement CcElement::unit(SystemPtr system) {
  CcElement f(system);
  f.set(system->group->identity(), system->unit());
  return f;
}

CcElement CcElement::delta(SystemPtr system, const GroupElement& g, const Element& a) {
  CcElement f(std::move(system));
  f.set(g, a);
  return f;
}

std::vector<GroupElement> CcElement::support() const {
  std::vector<GroupElement> out;
  out.reserve(terms_.size());
  for (const auto& [g, a] : terms_) out.push_back(g);
  return out;
}

Element CcElement::at(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Element::zero(sys_->algebra) : it->second;
}

void CcElement::set(const GroupElement& g, Element a) {
  if (a.spec() != sys_->algebra) throw std::invalid_argument("coefficient does not match the system algebra");
  if (alg::max_abs(a) < tol::kSupport) {
    terms_.erase(g);
  } else {
    terms_[g] = std::move(a);
  }
}

void CcElement::add(const GroupElement& g, const Element& a) {
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    set(g, a);
  } else {
    it->second += a;
    if (alg::max_abs(it->second) < tol::kSupport) terms_.erase(it);
  }
}

namespace {
void check_same_system(const CcElement& a, const CcElement& b) {
  if (a.system() != b.system()) throw std::invalid_argument("C_c elements belong to different systems");
}
}  // namespace

CcElement& CcElement::operator+=(const CcElement& other) {
  check_same_system(*this, other);
  for (const auto& [g, a] : other.terms_) add(g, a);
  return *this;
}

CcElement& CcElement::operator-=(const CcElement& other) {
  check_same_system(*this, other);
  for (const auto& [g, a] : other.terms_) add(g, -1.0 * a);
  return *this;
}

CcElement& CcElement::operator*=(alg::Complex c) {
  std::map<GroupElement, Element> old;
  old.swap(terms_);
  for (auto& [g, a] : old) set(g, c * std::move(a));
  return *this;
}

CcElement operator+(CcElement a, const CcElement& b) { return a += b; }
CcElement operator-(CcElement a, const CcElement& b) { return a -= b; }
CcElement operator*(alg::Complex c, CcElement a) { return a *= c; }

CcElement twisted_mul(const CcElement& f1, const CcElement& f2) {
  check_same_system(f1, f2);
  const auto& S = *f1.system();
  const auto& G = *S.group;
  std::map<GroupElement, Element> acc;
  for (const auto& [g, a] : f1.terms()) {
    const alg::Morphism ag = S.alpha(g);
    for (const auto& [x, b] : f2.terms()) {
      // x = g⁻¹k, so k = gx.
      const GroupElement k = G.mul(g, x);
      Element term = a * ag.apply(b) * S.sigma(g, x);
      auto it = acc.find(k);
      if (it == acc.end()) {
        acc.emplace(k, std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  CcElement out(f1.system());
  for (auto& [k, v] : acc) out.set(k, std::move(v));
  return out;
}

CcElement star(const CcElement& f) {
  const auto& S = *f.system();
  const auto& G = *S.group;
  CcElement out(f.system());
  for (const auto& [x, a] : f.terms()) {
    const GroupElement h = G.inverse(x);  // f*(h) reads f at h⁻¹ = x
    out.set(h, S.alpha(h).apply(S.sigma(x, h).adjoint() * a.adjoint()));
  }
  return out;
}

Element coefficient(const CcElement& f, const GroupElement& g) { return f.at(g); }

Element expectation(const CcElement& f) { return f.at(f.system()->group->identity()); }

Element alpha_inner(const CcElement& f) {
  const auto& S = *f.system();
  Element s = Element::zero(S.algebra);
  for (const auto& [g, a] : f.terms()) s += S.alpha_inv(g).apply(a.adjoint() * a);
  return s;
}

double norm_l1(const CcElement& f) {
  double s = 0.0;
  for (const auto& [g, a] : f.terms()) s += alg::norm(a);
  return s;
}

double norm_linf(const CcElement& f) {
  double s = 0.0;
  for (const auto& [g, a] : f.terms()) s = std::max(s, alg::norm(a));
  return s;
}

double norm_alpha(const CcElement& f) { return std::sqrt(alg::norm(alpha_inner(f))); }

namespace {
double checked_kappa(const Kappa& kappa, const GroupElement& g) {
  const double k = kappa(g);
  if (!(k >= 1.0 - 1e-15)) throw std::domain_error("weight is below 1 on the support");
  return k;
}
}  // namespace

double norm_2kappa(const CcElement& f, const Kappa& kappa) {
  double s = 0.0;
  for (const auto& [g, a] : f.terms()) {
    const double v = alg::norm(a) * checked_kappa(kappa, g);
    s += v * v;
  }
  return std::sqrt(s);
}

double norm_alpha_kappa(const CcElement& f, const Kappa& kappa) {
  CcElement weighted(f.system());
  for (const auto& [g, a] : f.terms()) weighted.set(g, checked_kappa(kappa, g) * a);
  return norm_alpha(weighted);
}

CcElement random_cc(const SystemPtr& sys, const std::vector<GroupElement>& support,
                    std::mt19937_64& rng) {
  CcElement f(sys);
  for (const auto& g : support) f.set(g, alg::random_element(sys->algebra, rng));
  return f;
}

Eigen::MatrixXcd compression_on(const CcElement& f, const std::vector<GroupElement>& index) {
  const auto& S = *f.system();
  const auto& G = *S.group;
  const int D = S.algebra.total_dim();
  const auto n = static_cast<Eigen::Index>(index.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * D, n * D);
  std::map<GroupElement, Eigen::Index> pos;
  for (Eigen::Index i = 0; i < n; ++i) pos.emplace(index[static_cast<std::size_t>(i)], i);
  std::map<GroupElement, alg::Morphism> inv_alpha;
  for (Eigen::Index col = 0; col < n; ++col) {
    const GroupElement& h = index[static_cast<std::size_t>(col)];
    for (const auto& [g, a] : f.terms()) {
      const GroupElement hp = G.mul(g, h);  // h′ with h′h⁻¹ = g
      auto it = pos.find(hp);
      if (it == pos.end()) continue;
      auto ai = inv_alpha.find(hp);
      if (ai == inv_alpha.end()) ai = inv_alpha.emplace(hp, S.alpha_inv(hp)).first;
      const Element entry = ai->second.apply(a * S.sigma(g, h));
      m.block(it->second * D, col * D, D, D) = alg::to_dense(entry);
    }
  }
  return m;
}

CompressedRep compression_matrix(const CcElement& f, double radius, grp::LengthTag length) {
  const auto& G = *f.system()->group;
  CompressedRep rep;
  rep.radius = radius;
  rep.length = length;
  rep.index = G.ball(radius, length);
  rep.block_dim = f.system()->algebra.total_dim();
  rep.matrix = compression_on(f, rep.index);
  return rep;
}

CompressedRep compression_matrix(const CcElement& f, double radius) {
  return compression_matrix(f, radius, f.system()->group->default_length());
}

double full_radius(const grp::Group& g) {
  if (!g.is_finite()) throw std::logic_error("full radius requested on an infinite group");
  return static_cast<double>(g.diameter());
}

std::vector<double> default_schedule(const grp::Group& g) {
  if (g.is_finite()) return {full_radius(g)};
  // Radii whose balls stay below the cap; on exponential-growth groups this stops early.
  constexpr std::size_t kCap = 2048;
  std::vector<double> out;
  for (double R : {4.0, 8.0, 16.0, 32.0}) {
    if (g.ball(R).size() > kCap) break;
    out.push_back(R);
  }
  if (out.empty()) {
    for (int R = 1; g.ball(R).size() <= kCap; ++R) out.push_back(R);
  }
  return out;
}

double compressed_norm(const CcElement& f, double radius, grp::LengthTag length) {
  if (f.empty()) return 0.0;
  const Eigen::MatrixXcd m = compression_on(f, f.system()->group->ball(radius, length));
  return spectral::largest_singular_value(m).value;
}

OpnormBounds opnorm_bounds(const CcElement& f, const std::vector<double>& schedule,
                           grp::LengthTag length) {
  if (schedule.empty()) throw std::invalid_argument("opnorm_bounds needs a nonempty schedule");
  OpnormBounds b;
  b.upper = norm_l1(f);
  std::vector<double> values(schedule.size(), 0.0);
  parallel_for(schedule.size(), [&](std::size_t i) { values[i] = compressed_norm(f, schedule[i], length); });
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    b.lower = std::max(b.lower, values[i]);
    b.trace.emplace_back(schedule[i], values[i]);
  }
  return b;
}

OpnormBounds opnorm_bounds(const CcElement& f, const std::vector<double>& schedule) {
  return opnorm_bounds(f, schedule, f.system()->group->default_length());
}

}  // namespace twisted::cc
