#pragma once

#include <map>
#include <string>
#include <vector>

#include "twisted/crossed.hpp"
#include "twisted/hilbmod.hpp"
#include "twisted/multipliers.hpp"

namespace twisted::sum {

using cc::CcElement;
using grp::GroupElement;
using mult::Multiplier;

struct SummingNet {
  std::string kind;
  std::vector<double> index;  // N for Fejér, r for Abel–Poisson, position for approx data
  std::vector<Multiplier> members;
  std::vector<double> declared_bounds;
  // Abel–Poisson: kernel is zeroed beyond this radius, and the discarded mass is below
  // tail_bound. Empty for nets with finite G-support.
  std::vector<double> truncation_radius;
  std::vector<double> tail_bound;
};

// φ(g) = |gF ∩ F| / |F|
double fejer_value(const grp::Group& G, const GroupElement& g, const std::vector<GroupElement>& F);
SummingNet fejer_net(const sys::SystemPtr& sys, const std::vector<int>& indices);

// Σ_{g ∈ Z^d, L(g) > R} r^{L(g)} or a certified upper bound for it (see the .cpp).
double abel_poisson_tail(int d, grp::LengthTag length, double r, long long R);
// Smallest integer R whose certified tail is below eps.
long long abel_poisson_radius(int d, grp::LengthTag length, double r, double eps);
SummingNet abel_poisson_net(const sys::SystemPtr& sys, grp::LengthTag length,
                            const std::vector<double>& r_schedule, double eps = 1e-8);

struct ApproxData {
  std::map<GroupElement, hm::ModuleVector> xi;
  std::map<GroupElement, hm::ModuleVector> eta;
};

// T(g,a) = Σ_h ⟨ξ(h), ρ(a) v(g) η(g⁻¹h)⟩, G-support supp ξ · (supp η)⁻¹.
Multiplier approx_data_multiplier(const hm::EquivariantRep& rep, const ApproxData& data);
SummingNet approx_data_net(const hm::EquivariantRep& rep, const std::vector<ApproxData>& data);

// ‖Σ_h ⟨ξ(h),ξ(h)⟩‖^{1/2}
double family_norm(const std::map<GroupElement, hm::ModuleVector>& xi);

struct PointSample {
  GroupElement g;
  alg::Element a;
};

struct ConvergenceRow {
  double index = 0.0;
  double l1_error = 0.0;
  double alpha_error = 0.0;
  double tail_allowance = 0.0;  // ε‖f‖∞ for truncated kernels, added into l1_error
  std::vector<double> opnorm_error;  // one per scheduled radius
  double pointwise_max = 0.0;
};

struct ConvergenceReport {
  std::vector<double> radii;
  std::vector<ConvergenceRow> rows;
  std::vector<std::vector<double>> pointwise;  // [row][sample] ‖T_g(a) − a‖
  bool pointwise_monotone = true;
  bool converged = false;  // last pointwise error below target
  double target = 1e-6;
};

std::vector<PointSample> default_point_samples(const CcElement& f, std::uint64_t seed);

ConvergenceReport run_convergence(const SummingNet& net, const CcElement& f,
                                  const std::vector<double>& radii,
                                  const std::vector<PointSample>& samples, double target = 1e-6);

}  // namespace twisted::sum
