#include "twisted/coeffalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "twisted/spectral.hpp"

namespace twisted::alg {

int AlgebraSpec::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int AlgebraSpec::complex_dim() const {
  int s = 0;
  for (int d : dims) s += d * d;
  return s;
}

bool AlgebraSpec::commutative() const {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 1; });
}

void check_spec(const AlgebraSpec& spec) {
  if (spec.dims.empty()) throw std::invalid_argument("algebra needs at least one block");
  for (int d : spec.dims)
    if (d < 1) throw std::invalid_argument("block dimensions must be >= 1");
}

namespace {

void check_same_shape(const Element& a, const Element& b) {
  if (a.blocks().size() != b.blocks().size())
    throw std::invalid_argument("algebra elements have different block counts");
  for (std::size_t j = 0; j < a.blocks().size(); ++j)
    if (a.block(j).rows() != b.block(j).rows())
      throw std::invalid_argument("algebra elements have different block shapes");
}

}  // namespace

Element Element::zero(const AlgebraSpec& spec) {
  std::vector<Eigen::MatrixXcd> b;
  for (int d : spec.dims) b.push_back(Eigen::MatrixXcd::Zero(d, d));
  return Element(std::move(b));
}

Element Element::unit(const AlgebraSpec& spec) { return scalar(spec, 1.0); }

Element Element::scalar(const AlgebraSpec& spec, Complex c) {
  std::vector<Eigen::MatrixXcd> b;
  for (int d : spec.dims) b.push_back(c * Eigen::MatrixXcd::Identity(d, d));
  return Element(std::move(b));
}

Element Element::diagonal(const std::vector<Complex>& coords) {
  std::vector<Eigen::MatrixXcd> b;
  for (Complex c : coords) b.push_back(Eigen::MatrixXcd::Constant(1, 1, c));
  return Element(std::move(b));
}

AlgebraSpec Element::spec() const {
  AlgebraSpec s;
  for (const auto& b : blocks_) s.dims.push_back(static_cast<int>(b.rows()));
  return s;
}

Element Element::adjoint() const {
  Element r = *this;
  for (auto& b : r.blocks_) b.adjointInPlace();
  return r;
}

Element& Element::operator+=(const Element& other) {
  check_same_shape(*this, other);
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] += other.blocks_[j];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  check_same_shape(*this, other);
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] -= other.blocks_[j];
  return *this;
}

Element& Element::operator*=(Complex c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }

Element operator*(const Element& a, const Element& b) {
  check_same_shape(a, b);
  std::vector<Eigen::MatrixXcd> out(a.blocks().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a.block(j) * b.block(j);
  return Element(std::move(out));
}

Element operator*(Complex c, Element a) { return a *= c; }
Element operator*(double c, Element a) { return a *= Complex(c, 0.0); }

double norm(const Element& a) {
  double n = 0.0;
  for (const auto& b : a.blocks()) n = std::max(n, spectral::dense_operator_norm(b));
  return n;
}

double distance(const Element& a, const Element& b) { return norm(a - b); }

double max_abs(const Element& a) {
  double m = 0.0;
  for (const auto& b : a.blocks())
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

Flags classify(const Element& a, double tol) {
  const AlgebraSpec spec = a.spec();
  const Element one = Element::unit(spec);
  const Element as = a.adjoint();
  Flags f;
  f.selfadjoint = norm(a - as) <= tol;
  f.unitary = norm(as * a - one) <= tol && norm(a * as - one) <= tol;
  if (f.selfadjoint) {
    double min_eig = 0.0;
    bool first = true;
    for (const auto& b : a.blocks()) {
      const Eigen::MatrixXcd h = 0.5 * (b + b.adjoint());
      const double e = spectral::hermitian_min_eigenvalue(h);
      min_eig = first ? e : std::min(min_eig, e);
      first = false;
    }
    f.positive = min_eig >= -tol;
    f.projection = norm(a * a - a) <= tol;
  }
  f.central = true;
  for (const auto& b : a.blocks()) {
    const Complex t = b.trace() / static_cast<double>(b.rows());
    const Eigen::MatrixXcd dev = b - t * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    if (spectral::dense_operator_norm(dev) > tol) f.central = false;
  }
  return f;
}

Eigen::MatrixXcd to_dense(const Element& a) {
  int n = 0;
  for (const auto& b : a.blocks()) n += static_cast<int>(b.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  int off = 0;
  for (const auto& b : a.blocks()) {
    const auto d = b.rows();
    m.block(off, off, d, d) = b;
    off += static_cast<int>(d);
  }
  return m;
}

Element random_element(const AlgebraSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Element a = Element::zero(spec);
  for (auto& b : a.blocks())
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r) b(r, c) = Complex(u(rng), u(rng));
  return a;
}

Element random_unitary(const AlgebraSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Element a = Element::zero(spec);
  for (auto& b : a.blocks()) {
    const auto d = b.rows();
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r < d; ++r) g(r, c) = Complex(n01(rng), n01(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
      const Complex diag = rr(k, k);
      const double m = std::abs(diag);
      if (m > 0) q.col(k) *= diag / m;
    }
    b = q;
  }
  return a;
}

std::vector<double> serialize(const Element& a) {
  std::vector<double> out;
  for (const auto& b : a.blocks())
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        out.push_back(b(r, c).real());
        out.push_back(b(r, c).imag());
      }
  return out;
}

Element deserialize(const AlgebraSpec& spec, const std::vector<double>& data) {
  if (data.size() != 2 * static_cast<std::size_t>(spec.complex_dim()))
    throw std::invalid_argument("serialized element has " + std::to_string(data.size()) +
                                " reals, expected " + std::to_string(2 * spec.complex_dim()));
  Element a = Element::zero(spec);
  std::size_t k = 0;
  for (auto& b : a.blocks())
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        b(r, c) = Complex(data[k], data[k + 1]);
        k += 2;
      }
  return a;
}

Element matrix_unit(const AlgebraSpec& spec, std::size_t j, int r, int c) {
  Element a = Element::zero(spec);
  a.block(j)(r, c) = 1.0;
  return a;
}

std::vector<Element> matrix_units(const AlgebraSpec& spec) {
  std::vector<Element> out;
  for (std::size_t j = 0; j < spec.blocks(); ++j)
    for (int r = 0; r < spec.dims[j]; ++r)
      for (int c = 0; c < spec.dims[j]; ++c) out.push_back(matrix_unit(spec, j, r, c));
  return out;
}

Morphism Morphism::identity(const AlgebraSpec& spec) {
  Morphism m;
  for (std::size_t j = 0; j < spec.blocks(); ++j) {
    m.source.push_back(static_cast<int>(j));
    m.unitaries.push_back(Eigen::MatrixXcd::Identity(spec.dims[j], spec.dims[j]));
  }
  return m;
}

Morphism Morphism::inner(const Element& u) {
  Morphism m;
  for (std::size_t j = 0; j < u.blocks().size(); ++j) {
    m.source.push_back(static_cast<int>(j));
    m.unitaries.push_back(u.block(j));
  }
  return m;
}

Morphism Morphism::permutation(const AlgebraSpec& spec, std::vector<int> source) {
  if (source.size() != spec.blocks()) throw std::invalid_argument("permutation has wrong length");
  Morphism m;
  m.source = std::move(source);
  for (std::size_t j = 0; j < spec.blocks(); ++j)
    m.unitaries.push_back(Eigen::MatrixXcd::Identity(spec.dims[j], spec.dims[j]));
  check_morphism(spec, m);
  return m;
}

Element Morphism::apply(const Element& a) const {
  std::vector<Eigen::MatrixXcd> out(source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto& src = a.block(static_cast<std::size_t>(source[j]));
    const auto& u = unitaries[j];
    if (u.rows() == 1) {
      out[j] = src;  // 1x1 conjugation is trivial
    } else {
      out[j] = u * src * u.adjoint();
    }
  }
  return Element(std::move(out));
}

Morphism Morphism::compose(const Morphism& other) const {
  Morphism m;
  m.source.resize(source.size());
  m.unitaries.resize(source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto s = static_cast<std::size_t>(source[j]);
    m.source[j] = other.source[s];
    m.unitaries[j] = unitaries[j] * other.unitaries[s];
  }
  return m;
}

bool Morphism::is_permutation() const {
  std::vector<int> sorted = source;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < sorted.size(); ++j)
    if (sorted[j] != static_cast<int>(j)) return false;
  return true;
}

Morphism Morphism::inverse() const {
  if (!is_permutation()) throw std::logic_error("morphism is not invertible (block map not a permutation)");
  Morphism m;
  m.source.resize(source.size());
  m.unitaries.resize(source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto k = static_cast<std::size_t>(source[j]);
    m.source[k] = static_cast<int>(j);
    m.unitaries[k] = unitaries[j].adjoint();
  }
  return m;
}

Morphism Morphism::pow(long long n) const {
  Morphism base = n < 0 ? inverse() : *this;
  AlgebraSpec spec;
  for (const auto& u : unitaries) spec.dims.push_back(static_cast<int>(u.rows()));
  Morphism r = identity(spec);
  for (unsigned long long e = static_cast<unsigned long long>(n < 0 ? -n : n); e > 0; e >>= 1) {
    if (e & 1) r = r.compose(base);
    base = base.compose(base);
  }
  return r;
}

bool Morphism::is_identity(double tol) const {
  for (std::size_t j = 0; j < source.size(); ++j) {
    if (source[j] != static_cast<int>(j)) return false;
    const auto& u = unitaries[j];
    if (u.rows() == 1) continue;
    // Ad(u) is trivial iff u is a scalar.
    const Complex t = u(0, 0);
    if ((u - t * Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

void check_morphism(const AlgebraSpec& spec, const Morphism& m, double tol) {
  if (m.source.size() != spec.blocks() || m.unitaries.size() != spec.blocks())
    throw std::invalid_argument("morphism block count does not match the algebra");
  for (std::size_t j = 0; j < spec.blocks(); ++j) {
    const int s = m.source[j];
    if (s < 0 || static_cast<std::size_t>(s) >= spec.blocks())
      throw std::invalid_argument("morphism source index out of range");
    if (spec.dims[static_cast<std::size_t>(s)] != spec.dims[j])
      throw std::invalid_argument("morphism maps between blocks of different dimension");
    const auto& u = m.unitaries[j];
    if (u.rows() != spec.dims[j] || u.cols() != spec.dims[j])
      throw std::invalid_argument("morphism conjugator has wrong shape");
    const Eigen::MatrixXcd dev = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    if (dev.cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("morphism conjugator is not unitary");
  }
}

Complex State::operator()(const Element& a) const {
  return vec.dot(a.block(block) * vec);  // Eigen's dot conjugates the first argument
}

std::vector<State> pure_states(const AlgebraSpec& spec, int sample_budget, std::mt19937_64& rng) {
  std::vector<State> out;
  std::normal_distribution<double> n01(0.0, 1.0);
  for (std::size_t j = 0; j < spec.blocks(); ++j) {
    const int d = spec.dims[j];
    if (d == 1) {
      out.push_back({j, Eigen::VectorXcd::Ones(1)});
      continue;
    }
    for (int k = 0; k < sample_budget; ++k) {
      Eigen::VectorXcd v(d);
      for (int i = 0; i < d; ++i) v(i) = Complex(n01(rng), n01(rng));
      v.normalize();
      out.push_back({j, v});
    }
  }
  return out;
}

}  // namespace twisted::alg
