#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "twisted/system.hpp"

using namespace twisted;
using alg::Complex;
using grp::GroupElement;

namespace {

std::shared_ptr<const grp::Group> group(grp::GroupSpec spec) {
  return std::make_shared<const grp::Group>(std::move(spec));
}

Complex entry(const alg::Element& a, std::size_t j) { return a.block(j)(0, 0); }

}  // namespace

TEST(System, TrivialSystemValidates) {
  const auto G = group(grp::GroupSpec::free_f2());
  const alg::AlgebraSpec A{{2, 1}};
  const auto sys = sys::make_system(A, G, sys::trivial_action(A), sys::trivial_cocycle(A), "trivial");
  const auto rep = sys::validate_default(*sys, 2.0);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.triples, 17u * 17u * 17u);
  EXPECT_LT(rep.max_violation(), 1e-12);
}

TEST(System, ThetaCocycleValues) {
  const alg::AlgebraSpec A = alg::AlgebraSpec::scalars();
  const auto c = sys::theta_cocycle(A, 0.1);
  const Complex v = entry(c({{2}}, {{3}}), 0);
  EXPECT_NEAR(std::abs(v - std::polar(1.0, 2 * std::numbers::pi * 0.6)), 0.0, 1e-14);
  // Z²: exp(2πiθ m₂n₁)
  const auto c2 = sys::theta_cocycle(A, 0.2);
  EXPECT_NEAR(std::abs(entry(c2({{1, 0}}, {{0, 1}}), 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(entry(c2({{0, 1}}, {{1, 0}}), 0) - std::polar(1.0, 2 * std::numbers::pi * 0.2)), 0.0,
              1e-14);
  const auto torus = sys::make_system(A, group(grp::GroupSpec::zd(2)), sys::trivial_action(A), c2, "theta");
  EXPECT_TRUE(sys::validate_default(*torus, 2.0).passed);
}

TEST(System, Sl2SectionSignsFromIntegerMatrices) {
  const auto G = group(grp::GroupSpec::z2_z3());
  const alg::AlgebraSpec A = alg::AlgebraSpec::points(2);
  const auto cocycle = sys::section_cocycle(G, sys::sl2_extension());
  const GroupElement s = G->normal_form("s"), t = G->normal_form("t"), t2 = G->normal_form("t^2");
  // S² = −I, T³ = −I, T²·T² = −T: the second coordinate carries the sign.
  EXPECT_EQ(entry(cocycle(s, s), 1), Complex(-1.0));
  EXPECT_EQ(entry(cocycle(t, t), 1), Complex(1.0));
  EXPECT_EQ(entry(cocycle(t, t2), 1), Complex(-1.0));
  EXPECT_EQ(entry(cocycle(t2, t2), 1), Complex(-1.0));
  EXPECT_EQ(entry(cocycle(s, t), 1), Complex(1.0));
  for (const auto& g : G->ball(3)) EXPECT_EQ(entry(cocycle(g, G->identity()), 1), Complex(1.0));

  const auto sys = sys::make_system(A, G, sys::trivial_action(A), cocycle, "section");
  const auto rep = sys::validate_default(*sys, 3.0);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.max_violation(), 0.0);
}

TEST(System, PerturbedCocycleIsDetected) {
  const alg::AlgebraSpec A = alg::AlgebraSpec::scalars();
  const auto torus = sys::make_system(A, group(grp::GroupSpec::zd(2)), sys::trivial_action(A),
                                      sys::theta_cocycle(A, 0.2), "theta");
  const auto bad = sys::perturb_cocycle(torus, {{1, 0}}, {{0, 1}}, 0.1);
  ASSERT_EQ(bad->witness_pairs.size(), 1u);
  const auto rep = sys::validate_default(*bad, 1.0);
  EXPECT_FALSE(rep.passed);
  // |e^{0.1i} − 1| = 2 sin(0.05)
  EXPECT_NEAR(rep.cocycle, 2 * std::sin(0.05), 1e-12);
  EXPECT_FALSE(rep.witness.empty());
}

TEST(System, GeneratorActionExtendsAlongFactorization) {
  const auto G = group(grp::GroupSpec::zd(1));
  const alg::AlgebraSpec A = alg::AlgebraSpec::points(3);
  const auto act = sys::action_from_generators(G, {alg::Morphism::permutation(A, {1, 2, 0})});
  EXPECT_TRUE(act({{3}}).is_identity());
  EXPECT_TRUE(act({{-2}}).compose(act({{2}})).is_identity());
  const alg::Element x = alg::Element::diagonal({1.0, 2.0, 3.0});
  EXPECT_EQ(distance(act({{2}}).apply(x), act({{1}}).apply(act({{1}}).apply(x))), 0.0);
}

TEST(System, NoncommutingActionRejectedByValidation) {
  // α_a, α_b inner by non-commuting unitaries on Z² violates α_gα_h = α_{gh}.
  const auto G = group(grp::GroupSpec::zd(2));
  const alg::AlgebraSpec A{{2}};
  alg::Element u = alg::Element::zero(A), v = alg::Element::zero(A);
  u.block(0) << 0, 1, 1, 0;
  v.block(0) << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
  const auto act = sys::action_from_generators(G, {alg::Morphism::inner(u), alg::Morphism::inner(v)});
  const auto sys = sys::make_system(A, G, act, sys::trivial_cocycle(A), "table");
  EXPECT_FALSE(sys::validate_default(*sys, 1.0).passed);
}

TEST(System, FiniteGroupsAreExhaustive) {
  const auto G = group(grp::GroupSpec::cyclic(6));
  const alg::AlgebraSpec A = alg::AlgebraSpec::scalars();
  const auto sys = sys::make_system(A, G, sys::trivial_action(A), sys::theta_cocycle(A, 1.0 / 6), "theta");
  EXPECT_EQ(sys::default_triples(*sys).size(), 216u);
}
