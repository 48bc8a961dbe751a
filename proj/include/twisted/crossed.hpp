#pragma once

#include <functional>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "twisted/coeffalg.hpp"
#include "twisted/grp.hpp"
#include "twisted/system.hpp"

namespace twisted::cc {

using grp::GroupElement;
using sys::SystemPtr;

// Finitely supported A-valued function on G. Values with max-abs entry below the
// support threshold are never stored, so the support is canonical.
class CcElement {
 public:
  explicit CcElement(SystemPtr system);

  static CcElement unit(SystemPtr system);
  static CcElement delta(SystemPtr system, const GroupElement& g, const alg::Element& a);

  const SystemPtr& system() const { return sys_; }
  const std::map<GroupElement, alg::Element>& terms() const { return terms_; }
  std::vector<GroupElement> support() const;
  bool empty() const { return terms_.empty(); }

  alg::Element at(const GroupElement& g) const;
  void set(const GroupElement& g, alg::Element a);
  void add(const GroupElement& g, const alg::Element& a);

  CcElement& operator+=(const CcElement& other);
  CcElement& operator-=(const CcElement& other);
  CcElement& operator*=(alg::Complex c);

 private:
  SystemPtr sys_;
  std::map<GroupElement, alg::Element> terms_;
};

CcElement operator+(CcElement a, const CcElement& b);
CcElement operator-(CcElement a, const CcElement& b);
CcElement operator*(alg::Complex c, CcElement a);

// (f₁⋆f₂)(k) = Σ_g f₁(g) α_g(f₂(g⁻¹k)) σ(g, g⁻¹k)
CcElement twisted_mul(const CcElement& f1, const CcElement& f2);
// f*(h) = α_h(σ(h⁻¹,h)* f(h⁻¹)*)
CcElement star(const CcElement& f);

// Fourier coefficient f(g); the conditional expectation is the g = e case.
alg::Element coefficient(const CcElement& f, const GroupElement& g);
alg::Element expectation(const CcElement& f);

// Σ_g α_g⁻¹(f(g)* f(g)), the A-valued inner product ⟨f, f⟩_α.
alg::Element alpha_inner(const CcElement& f);

using Kappa = std::function<double(const GroupElement&)>;

double norm_l1(const CcElement& f);
double norm_linf(const CcElement& f);
double norm_alpha(const CcElement& f);
// ‖fκ‖₂ with ‖·‖₂ = (Σ_g ‖f(g)‖²)^{1/2}; throws std::domain_error if κ < 1 on the support.
double norm_2kappa(const CcElement& f, const Kappa& kappa);
double norm_alpha_kappa(const CcElement& f, const Kappa& kappa);
inline double norm_2(const CcElement& f) {
  return norm_2kappa(f, [](const GroupElement&) { return 1.0; });
}

// f(g) random on each listed g.
CcElement random_cc(const SystemPtr& sys, const std::vector<GroupElement>& support,
                    std::mt19937_64& rng);

struct CompressedRep {
  double radius = 0.0;
  grp::LengthTag length = grp::LengthTag::Word;
  std::vector<GroupElement> index;
  int block_dim = 1;  // Σ d_j
  Eigen::MatrixXcd matrix;
};

// P_R Λ(f) P_R in the A^G picture: block (h′, h) is α_{h′}⁻¹(f(h′h⁻¹) σ(h′h⁻¹, h)).
CompressedRep compression_matrix(const CcElement& f, double radius, grp::LengthTag length);
CompressedRep compression_matrix(const CcElement& f, double radius);
// Same construction on an explicit index set.
Eigen::MatrixXcd compression_on(const CcElement& f, const std::vector<GroupElement>& index);

// Radius at which the compression is the full regular representation of a finite group.
double full_radius(const grp::Group& g);
// {4, 8, 16, 32} on infinite groups (radii whose ball exceeds 2048 elements are dropped,
// falling back to 1, 2, ... on exponential growth), {full radius} on finite ones.
std::vector<double> default_schedule(const grp::Group& g);

struct OpnormBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::pair<double, double>> trace;  // (R, largest singular value of compression)
};

double compressed_norm(const CcElement& f, double radius, grp::LengthTag length);
OpnormBounds opnorm_bounds(const CcElement& f, const std::vector<double>& schedule,
                           grp::LengthTag length);
OpnormBounds opnorm_bounds(const CcElement& f, const std::vector<double>& schedule);

}  // namespace twisted::cc
