#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace twisted::alg {

using Complex = std::complex<double>;

// Direct sum of full matrix blocks M_{d_1} ⊕ ... ⊕ M_{d_k}.
struct AlgebraSpec {
  std::vector<int> dims;

  std::size_t blocks() const { return dims.size(); }
  int total_dim() const;    // Σ d_j, size of the faithful block-diagonal representation
  int complex_dim() const;  // Σ d_j²
  bool commutative() const;
  bool operator==(const AlgebraSpec&) const = default;

  static AlgebraSpec points(int k) { return {std::vector<int>(static_cast<std::size_t>(k), 1)}; }
  static AlgebraSpec scalars() { return points(1); }
};

void check_spec(const AlgebraSpec& spec);

class Element {
 public:
  Element() = default;
  explicit Element(std::vector<Eigen::MatrixXcd> blocks) : blocks_(std::move(blocks)) {}

  static Element zero(const AlgebraSpec& spec);
  static Element unit(const AlgebraSpec& spec);
  static Element scalar(const AlgebraSpec& spec, Complex c);
  // Commutative algebras: element with the given coordinates.
  static Element diagonal(const std::vector<Complex>& coords);

  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  std::vector<Eigen::MatrixXcd>& blocks() { return blocks_; }
  const Eigen::MatrixXcd& block(std::size_t j) const { return blocks_[j]; }
  Eigen::MatrixXcd& block(std::size_t j) { return blocks_[j]; }
  AlgebraSpec spec() const;

  Element adjoint() const;
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex c);

 private:
  std::vector<Eigen::MatrixXcd> blocks_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator*(Complex c, Element a);
Element operator*(double c, Element a);

// C*-norm: largest singular value over the blocks.
double norm(const Element& a);
double distance(const Element& a, const Element& b);
// Cheap max-abs entry; used for support pruning and exactness checks.
double max_abs(const Element& a);

struct Flags {
  bool selfadjoint = false;
  bool unitary = false;
  bool positive = false;
  bool projection = false;
  bool central = false;
};

Flags classify(const Element& a, double tol = 1e-10);

// Block-diagonal matrix of size total_dim().
Eigen::MatrixXcd to_dense(const Element& a);

// Entries uniform in the unit square of ℂ.
Element random_element(const AlgebraSpec& spec, std::mt19937_64& rng);
// Haar-ish unitary per block (QR of a Gaussian matrix).
Element random_unitary(const AlgebraSpec& spec, std::mt19937_64& rng);

// Interleaved real/imaginary parts, row-major within each block, blocks in order.
std::vector<double> serialize(const Element& a);
Element deserialize(const AlgebraSpec& spec, const std::vector<double>& data);

// Matrix unit e_{rc} in block j.
Element matrix_unit(const AlgebraSpec& spec, std::size_t j, int r, int c);
// All matrix units, block by block.
std::vector<Element> matrix_units(const AlgebraSpec& spec);

// β(a)_j = U_j a_{source[j]} U_j*. A *-homomorphism of the block algebra whenever
// dims[j] == dims[source[j]]; an automorphism when source is a permutation.
struct Morphism {
  std::vector<int> source;
  std::vector<Eigen::MatrixXcd> unitaries;

  static Morphism identity(const AlgebraSpec& spec);
  static Morphism inner(const Element& u);
  static Morphism permutation(const AlgebraSpec& spec, std::vector<int> source);

  Element apply(const Element& a) const;
  // (this ∘ other)(a) = this(other(a))
  Morphism compose(const Morphism& other) const;
  Morphism inverse() const;
  Morphism pow(long long n) const;
  bool is_permutation() const;
  bool is_identity(double tol = 1e-12) const;
};

void check_morphism(const AlgebraSpec& spec, const Morphism& m, double tol = 1e-10);

// Vector state a ↦ v* a_block v. On commutative algebras this is a point evaluation.
struct State {
  std::size_t block = 0;
  Eigen::VectorXcd vec;

  Complex operator()(const Element& a) const;
};

std::vector<State> pure_states(const AlgebraSpec& spec, int sample_budget, std::mt19937_64& rng);

}  // namespace twisted::alg
