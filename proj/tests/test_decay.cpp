#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "twisted/cli.hpp"
#include "twisted/decay.hpp"

using namespace twisted;
using cc::CcElement;
using decay::WeightTag;
using grp::GroupElement;
using grp::LengthTag;

namespace {

sys::SystemPtr preset(const std::string& name) { return cli::build_system(cli::preset_system(name)); }

std::shared_ptr<const grp::Group> group(grp::GroupSpec spec) {
  return std::make_shared<const grp::Group>(std::move(spec));
}

}  // namespace

TEST(Weights, Values) {
  const auto Z = group(grp::GroupSpec::zd(1));
  EXPECT_NEAR(decay::make_weight(Z, WeightTag::Power, 3.0)({{2}}), 27.0, 1e-12);
  EXPECT_NEAR(decay::make_weight(Z, WeightTag::Exponential, 0.5)({{-3}}), 8.0, 1e-14);
  EXPECT_NEAR(decay::make_weight(Z, WeightTag::ExpT, 0.5)({{2}}), std::exp(1.0), 1e-14);
  EXPECT_EQ(decay::make_weight(Z, WeightTag::Constant, 7.0)({{5}}), 1.0);
  EXPECT_THROW(decay::make_weight(Z, WeightTag::Power, 0.0), std::invalid_argument);
  EXPECT_THROW(decay::make_weight(Z, WeightTag::Exponential, 1.0), std::invalid_argument);
  EXPECT_THROW(decay::make_weight(group(grp::GroupSpec::free_f2()), WeightTag::Power, 1.0, LengthTag::L1),
               std::invalid_argument);
  for (auto t : {WeightTag::Constant, WeightTag::Power, WeightTag::Exponential, WeightTag::ExpT})
    EXPECT_EQ(decay::parse_weight(decay::weight_name(t)), t);
}

TEST(Weights, InverseSquareSummability) {
  const auto Z = group(grp::GroupSpec::zd(1));
  const auto Z2 = group(grp::GroupSpec::zd(2));
  const auto F2 = group(grp::GroupSpec::free_f2());
  EXPECT_EQ(decay::make_weight(Z, WeightTag::Power, 1.0).inverse_l2, true);
  EXPECT_EQ(decay::make_weight(Z, WeightTag::Power, 0.4).inverse_l2, false);
  EXPECT_EQ(decay::make_weight(Z2, WeightTag::Power, 1.0).inverse_l2, false);
  EXPECT_EQ(decay::make_weight(Z2, WeightTag::Power, 0.6, LengthTag::L2Squared).inverse_l2, true);
  EXPECT_EQ(decay::make_weight(Z, WeightTag::Constant, 0.0).inverse_l2, false);
  EXPECT_EQ(decay::make_weight(group(grp::GroupSpec::cyclic(5)), WeightTag::Constant, 0.0).inverse_l2, true);
  EXPECT_EQ(decay::make_weight(F2, WeightTag::Power, 5.0).inverse_l2, false);
  // Spheres of F2 grow like 3^k: r^{2k}·3^k is summable iff 3r² < 1.
  EXPECT_EQ(decay::make_weight(F2, WeightTag::Exponential, 0.5).inverse_l2, true);
  EXPECT_EQ(decay::make_weight(F2, WeightTag::Exponential, 0.6).inverse_l2, false);
}

TEST(Weights, BaselSum) {
  // Σ_n (1+|n|)^{−2} = π²/3 − 1; the tail beyond R is below 2/(R+1).
  const auto Z = group(grp::GroupSpec::zd(1));
  const auto w = decay::make_weight(Z, WeightTag::Power, 1.0);
  const double R = 20000;
  const double s = decay::inverse_l2_on(w, Z->ball(R));
  const double expect = std::numbers::pi * std::numbers::pi / 3.0 - 1.0;
  EXPECT_LT(expect - s * s, 2.0 / (R + 1));
  EXPECT_GT(expect - s * s, 0.0);
}

TEST(DecayProbe, UnitRatioOnFiniteGroup) {
  const auto S = preset("z12-twisted");
  const auto w = decay::make_weight(S->group, WeightTag::Power, 2.0);
  const auto p = decay::decay_constant_probe(S, w, 3.0, 6, 11);
  ASSERT_EQ(p.ratios.size(), 7u);
  EXPECT_NEAR(p.ratios[0], 1.0, 1e-12);
  EXPECT_EQ(p.compression_radius, 6.0);
  EXPECT_TRUE(p.l1_route_holds);
  for (double r : p.ratios) EXPECT_LE(r, p.c_lower);
}

TEST(DecayProbe, CommuChainOnScalarTorus) {
  const auto S = preset("points-z2");
  const auto w = decay::make_weight(S->group, WeightTag::Power, 2.0);
  const auto chain = decay::commu_chain_check(S, w, 2.0, 6, 5);
  EXPECT_TRUE(chain.holds);
  EXPECT_GE(chain.worst_slack, -1e-9);
  EXPECT_GT(chain.c_grp, 0.0);
  EXPECT_THROW(decay::commu_chain_check(preset("z-m2c"), decay::make_weight(preset("z-m2c")->group, WeightTag::Power, 2.0),
                                        2.0, 2, 5),
               std::invalid_argument);
}

TEST(Content, SingletonIsOne) {
  const auto S = preset("f2-scalar");
  const auto est = decay::content_probe(S, {S->group->normal_form("a b")});
  EXPECT_NEAR(est.lower, 1.0, 1e-9);
  EXPECT_EQ(est.upper_card, 1.0);
  ASSERT_TRUE(est.upper_sqrt.has_value());
  EXPECT_EQ(*est.upper_sqrt, 1.0);
}

TEST(Content, FreeGroupBallBelowSquareRoot) {
  const auto S = preset("f2-scalar");
  decay::ContentOptions opts;
  opts.sample_budget = 4;
  opts.ascent_sweeps = 1;
  opts.radius = 3.0;
  const auto E = S->group->ball(1);
  const auto est = decay::content_probe(S, E, opts);
  EXPECT_GE(est.lower, 1.0);
  EXPECT_LE(est.lower, std::sqrt(5.0) + 1e-9);
  EXPECT_LE(est.lower, est.upper_card);
  ASSERT_TRUE(est.witness.has_value());
  for (const auto& g : est.witness->support()) EXPECT_TRUE(std::find(E.begin(), E.end(), g) != E.end());
}

TEST(TailProfile, GeometricShellsHalve) {
  const auto S = preset("z-scalar");
  CcElement xi(S);
  for (int n = -8; n <= 8; ++n) xi.set({{n}}, std::pow(0.5, std::abs(n)) * S->unit());
  const auto shells = decay::tail_profile(xi, decay::ShellNorm::L2, LengthTag::Word);
  ASSERT_EQ(shells.size(), 9u);
  EXPECT_EQ(shells[0].count, 1u);
  EXPECT_NEAR(shells[0].norm, 1.0, 1e-15);
  for (std::size_t k = 2; k < shells.size(); ++k) {
    EXPECT_EQ(shells[k].count, 2u);
    EXPECT_NEAR(shells[k].norm / shells[k - 1].norm, 0.5, 1e-14);
  }
  EXPECT_EQ(decay::tail_profile(xi, decay::ShellNorm::Linf, LengthTag::Word, 12).size(), 13u);
}

TEST(CommutativeInequality, SinglePointIsEquality) {
  const auto S = preset("points-z2");
  const alg::Element a = alg::Element::diagonal({0.5, {0.0, -2.0}, 1.0});
  const auto f = CcElement::delta(S, {{1, 1}}, a);
  const auto xi = CcElement::delta(S, {{0, 0}}, alg::Element::diagonal({3.0, 1.0, 0.25}));
  for (std::size_t w = 0; w < 3; ++w) {
    const auto r = decay::commutative_inequality_check(S, f, xi, w);
    EXPECT_NEAR(r.residual, 0.0, 1e-14);
    ASSERT_EQ(r.pointwise.size(), 1u);
    EXPECT_NEAR(r.pointwise[0].lhs, r.pointwise[0].rhs, 1e-14);
  }
  EXPECT_NEAR(decay::commutative_inequality_check(S, f, xi, 1).lhs, 2.0, 1e-14);
}

TEST(CommutativeInequality, RandomConfigurationsHold) {
  const auto S = preset("points-z2");
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto f = cc::random_cc(S, S->group->ball(2), rng);
    const auto xi = cc::random_cc(S, S->group->ball(1), rng);
    for (std::size_t w = 0; w < 3; ++w) EXPECT_TRUE(decay::commutative_inequality_check(S, f, xi, w).holds);
  }
  EXPECT_THROW(decay::commutative_inequality_check(preset("z-m2c"), CcElement::unit(preset("z-m2c")),
                                                   CcElement::unit(preset("z-m2c")), 0),
               std::invalid_argument);
}
