#include "twisted/hilbmod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "twisted/spectral.hpp"

namespace twisted::hm {

namespace {
void check_rank(const ModuleVector& x, const ModuleVector& y) {
  if (x.rank() != y.rank()) throw std::invalid_argument("module vectors have different rank");
}
}  // namespace

ModuleVector ModuleVector::zero(const alg::AlgebraSpec& spec, std::size_t n) {
  return {std::vector<Element>(n, Element::zero(spec))};
}

ModuleVector ModuleVector::basis(const alg::AlgebraSpec& spec, std::size_t n, std::size_t i) {
  ModuleVector x = zero(spec, n);
  x.entries.at(i) = Element::unit(spec);
  return x;
}

Element inner(const ModuleVector& x, const ModuleVector& y) {
  check_rank(x, y);
  if (x.entries.empty()) throw std::invalid_argument("inner product of rank-0 vectors");
  Element s = x.entries[0].adjoint() * y.entries[0];
  for (std::size_t i = 1; i < x.rank(); ++i) s += x.entries[i].adjoint() * y.entries[i];
  return s;
}

ModuleVector right_mul(const ModuleVector& x, const Element& a) {
  ModuleVector r = x;
  for (auto& e : r.entries) e = e * a;
  return r;
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
  check_rank(x, y);
  ModuleVector r = x;
  for (std::size_t i = 0; i < r.rank(); ++i) r.entries[i] += y.entries[i];
  return r;
}

ModuleVector operator-(const ModuleVector& x, const ModuleVector& y) {
  check_rank(x, y);
  ModuleVector r = x;
  for (std::size_t i = 0; i < r.rank(); ++i) r.entries[i] -= y.entries[i];
  return r;
}

ModuleVector scale(alg::Complex c, const ModuleVector& x) {
  ModuleVector r = x;
  for (auto& e : r.entries) e *= c;
  return r;
}

double module_norm(const ModuleVector& x) { return std::sqrt(alg::norm(inner(x, x))); }

double distance(const ModuleVector& x, const ModuleVector& y) { return module_norm(x - y); }

ModuleVector random_vector(const alg::AlgebraSpec& spec, std::size_t n, std::mt19937_64& rng) {
  ModuleVector x;
  for (std::size_t i = 0; i < n; ++i) x.entries.push_back(alg::random_element(spec, rng));
  return x;
}

ModuleOperator ModuleOperator::identity(const alg::AlgebraSpec& spec, std::size_t n) {
  return left_mul(Element::unit(spec), n);
}

ModuleOperator ModuleOperator::left_mul(const Element& a, std::size_t n) {
  ModuleOperator op;
  op.n = n;
  op.entries.assign(n * n, Element::zero(a.spec()));
  for (std::size_t i = 0; i < n; ++i) op.at(i, i) = a;
  return op;
}

ModuleOperator ModuleOperator::scalar_matrix(const alg::AlgebraSpec& spec, const Eigen::MatrixXcd& u) {
  ModuleOperator op;
  op.n = static_cast<std::size_t>(u.rows());
  op.entries.reserve(op.n * op.n);
  for (std::size_t r = 0; r < op.n; ++r)
    for (std::size_t c = 0; c < op.n; ++c)
      op.entries.push_back(Element::scalar(spec, u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
  return op;
}

ModuleVector ModuleOperator::apply(const ModuleVector& x) const {
  if (x.rank() != n) throw std::invalid_argument("operator and vector ranks differ");
  ModuleVector r;
  for (std::size_t i = 0; i < n; ++i) {
    Element s = at(i, 0) * x.entries[0];
    for (std::size_t j = 1; j < n; ++j) s += at(i, j) * x.entries[j];
    r.entries.push_back(std::move(s));
  }
  return r;
}

ModuleOperator ModuleOperator::adjoint() const {
  ModuleOperator op = *this;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) op.at(r, c) = at(c, r).adjoint();
  return op;
}

ModuleOperator ModuleOperator::compose(const ModuleOperator& other) const {
  if (other.n != n) throw std::invalid_argument("operator ranks differ");
  ModuleOperator op = *this;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Element s = at(r, 0) * other.at(0, c);
      for (std::size_t k = 1; k < n; ++k) s += at(r, k) * other.at(k, c);
      op.at(r, c) = std::move(s);
    }
  return op;
}

ModuleOperator ModuleOperator::inverse() const {
  ModuleOperator op = *this;
  const alg::AlgebraSpec spec = entries.front().spec();
  for (std::size_t j = 0; j < spec.blocks(); ++j) {
    const Eigen::Index d = spec.dims[j];
    const auto N = static_cast<Eigen::Index>(n) * d;
    Eigen::MatrixXcd m(N, N);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m.block(static_cast<Eigen::Index>(r) * d, static_cast<Eigen::Index>(c) * d, d, d) = at(r, c).block(j);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) throw std::domain_error("module operator is not invertible");
    const Eigen::MatrixXcd inv = lu.inverse();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        op.at(r, c).block(j) = inv.block(static_cast<Eigen::Index>(r) * d, static_cast<Eigen::Index>(c) * d, d, d);
  }
  return op;
}

ModuleVector EquivariantRep::v(const GroupElement& g, const ModuleVector& x) const {
  if (!twisted) return V(g).apply(x);
  const alg::Morphism a = system->alpha(g);
  ModuleVector y = x;
  for (auto& e : y.entries) e = a.apply(e);
  return V(g).apply(y);
}

EquivariantRep trivial_rep(const sys::SystemPtr& sys) {
  EquivariantRep rep;
  rep.system = sys;
  rep.n = 1;
  rep.rho = [](const Element& a) { return ModuleOperator::left_mul(a, 1); };
  const ModuleOperator id = ModuleOperator::identity(sys->algebra, 1);
  rep.V = [id](const GroupElement&) { return id; };
  return rep;
}

EquivariantRep endomorphism_rep(const sys::SystemPtr& sys, const alg::Morphism& beta) {
  alg::check_morphism(sys->algebra, beta);
  EquivariantRep rep = trivial_rep(sys);
  rep.rho = [beta](const Element& a) { return ModuleOperator::left_mul(beta.apply(a), 1); };
  rep.rho_tag = "endomorphism-composed";
  return rep;
}

EquivariantRep alpha_tensor_unitary(const sys::SystemPtr& sys, std::size_t n,
                                    std::function<Eigen::MatrixXcd(const GroupElement&)> u) {
  EquivariantRep rep;
  rep.system = sys;
  rep.n = n;
  rep.rho = [n](const Element& a) { return ModuleOperator::left_mul(a, n); };
  const alg::AlgebraSpec spec = sys->algebra;
  rep.V = [spec, n, u = std::move(u)](const GroupElement& g) {
    const Eigen::MatrixXcd m = u(g);
    if (static_cast<std::size_t>(m.rows()) != n || m.rows() != m.cols())
      throw std::invalid_argument("group representation matrix has the wrong size");
    return ModuleOperator::scalar_matrix(spec, m);
  };
  rep.v_tag = "alpha-tensor-unitary";
  return rep;
}

ModuleVector ad_rho(const EquivariantRep& rep, const Element& u, const ModuleVector& y) {
  return right_mul(rep.rho(u).apply(y), u.adjoint());
}

double EquivariantReport::max_violation() const {
  return std::max(std::max(axiom1, axiom2), std::max(axiom3, axiom4));
}

EquivariantSamples default_samples(const EquivariantRep& rep, std::mt19937_64& rng, double radius) {
  EquivariantSamples s;
  const auto& G = *rep.system->group;
  s.group = G.is_finite() ? G.elements() : G.ball(radius);
  for (int i = 0; i < 3; ++i) s.algebra.push_back(alg::random_element(rep.system->algebra, rng));
  s.algebra.push_back(Element::unit(rep.system->algebra));
  for (int i = 0; i < 3; ++i) s.vectors.push_back(random_vector(rep.system->algebra, rep.n, rng));
  return s;
}

EquivariantReport validate_equivariant(const EquivariantRep& rep, const EquivariantSamples& samples,
                                       double tol) {
  const auto& S = *rep.system;
  const auto& G = *S.group;
  EquivariantReport out;
  double worst = -1.0;
  auto consider = [&](double v, double& slot, const std::string& what) {
    slot = std::max(slot, v);
    if (v > worst) {
      worst = v;
      out.witness = what;
    }
  };
  for (const auto& g : samples.group) {
    const alg::Morphism ag = S.alpha(g);
    const std::string gs = G.to_string(g);
    for (const auto& x : samples.vectors) {
      const ModuleVector vx = rep.v(g, x);
      for (const auto& a : samples.algebra) {
        // (i) on vectors: ρ(α_g(a)) v(g)x = v(g) ρ(a)x
        consider(distance(rep.rho(ag.apply(a)).apply(vx), rep.v(g, rep.rho(a).apply(x))), out.axiom1,
                 "axiom (i) at g=" + gs);
        // (iv)
        consider(distance(rep.v(g, right_mul(x, a)), right_mul(vx, ag.apply(a))), out.axiom4,
                 "axiom (iv) at g=" + gs);
      }
      for (const auto& y : samples.vectors) {
        consider(alg::distance(ag.apply(inner(x, y)), inner(vx, rep.v(g, y))), out.axiom3,
                 "axiom (iii) at g=" + gs);
      }
    }
    for (const auto& h : samples.group) {
      const GroupElement gh = G.mul(g, h);
      const Element s = S.sigma(g, h);
      for (const auto& x : samples.vectors) {
        consider(distance(rep.v(g, rep.v(h, x)), ad_rho(rep, s, rep.v(gh, x))), out.axiom2,
                 "axiom (ii) at g=" + gs + ", h=" + G.to_string(h));
      }
    }
  }
  out.passed = out.max_violation() <= tol;
  return out;
}

std::vector<ModuleVector> central_part(const EquivariantRep& rep) {
  if (rep.n > 8) throw std::invalid_argument("central_part supports module rank n <= 8");
  const alg::AlgebraSpec& spec = rep.system->algebra;
  const auto units = alg::matrix_units(spec);
  const std::size_t per = units.size();  // complex dimension of A
  const std::size_t dim = per * rep.n;
  // Coordinates of z: entry i expanded on the matrix units.
  auto basis_vector = [&](std::size_t k) {
    ModuleVector z = ModuleVector::zero(spec, rep.n);
    z.entries[k / per] = units[k % per];
    return z;
  };
  auto flatten = [&](const ModuleVector& z) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    Eigen::Index k = 0;
    for (const auto& e : z.entries)
      for (const auto& b : e.blocks())
        for (Eigen::Index r = 0; r < b.rows(); ++r)
          for (Eigen::Index c = 0; c < b.cols(); ++c) v(k++) = b(r, c);
    return v;
  };
  Eigen::MatrixXcd constraints = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(per * dim),
                                                        static_cast<Eigen::Index>(dim));
  for (std::size_t u = 0; u < per; ++u) {
    const ModuleOperator r = rep.rho(units[u]);
    for (std::size_t k = 0; k < dim; ++k) {
      const ModuleVector z = basis_vector(k);
      constraints.block(static_cast<Eigen::Index>(u * dim), static_cast<Eigen::Index>(k),
                        static_cast<Eigen::Index>(dim), 1) = flatten(r.apply(z) - right_mul(z, units[u]));
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = 1e-9 * std::max(top, 1.0);
  std::vector<ModuleVector> out;
  const Eigen::MatrixXcd& V = svd.matrixV();
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    const double s = c < sv.size() ? sv(c) : 0.0;
    if (s > cut) continue;
    ModuleVector z = ModuleVector::zero(spec, rep.n);
    for (std::size_t k = 0; k < dim; ++k) {
      const alg::Complex coef = V(static_cast<Eigen::Index>(k), c);
      z.entries[k / per] += coef * units[k % per];
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace twisted::hm
