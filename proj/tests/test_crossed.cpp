#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twisted/cli.hpp"
#include "twisted/crossed.hpp"

using namespace twisted;
using cc::CcElement;

namespace {

sys::SystemPtr preset(const std::string& name) { return cli::build_system(cli::preset_system(name)); }

double l1_distance(const CcElement& a, const CcElement& b) { return cc::norm_l1(a - b); }

}  // namespace

TEST(Crossed, UnitAndDelta) {
  const auto S = preset("torus");
  const auto one = CcElement::unit(S);
  std::mt19937_64 rng(1);
  const auto f = cc::random_cc(S, S->group->ball(2), rng);
  EXPECT_LT(l1_distance(cc::twisted_mul(one, f), f), 1e-13);
  EXPECT_LT(l1_distance(cc::twisted_mul(f, one), f), 1e-13);
  EXPECT_EQ(f.support().size(), 13u);
  EXPECT_TRUE(CcElement::delta(S, {{1, 0}}, alg::Element::zero(S->algebra)).empty());
}

TEST(Crossed, TorusCommutationRelation) {
  // u = δ_(1,0), v = δ_(0,1): vu = e^{2πiθ} uv with θ = 0.2.
  const auto S = preset("torus");
  const auto one = S->unit();
  const auto u = CcElement::delta(S, {{1, 0}}, one), v = CcElement::delta(S, {{0, 1}}, one);
  const auto uv = cc::twisted_mul(u, v), vu = cc::twisted_mul(v, u);
  const alg::Complex w = std::polar(1.0, 2 * M_PI * 0.2);
  EXPECT_LT(l1_distance(vu, w * uv), 1e-14);
}

TEST(Crossed, AlgebraIdentitiesOnPresets) {
  std::mt19937_64 rng(2);
  for (const char* name : {"z-m2c", "torus", "z12-twisted", "psl2z", "d6-swap"}) {
    const auto S = preset(name);
    const auto ball = S->group->ball(2);
    for (int i = 0; i < 5; ++i) {
      const auto a = cc::random_cc(S, ball, rng), b = cc::random_cc(S, ball, rng), c = cc::random_cc(S, ball, rng);
      const double scale = cc::norm_l1(a) * cc::norm_l1(b) * cc::norm_l1(c);
      EXPECT_LT(l1_distance(cc::twisted_mul(cc::twisted_mul(a, b), c), cc::twisted_mul(a, cc::twisted_mul(b, c))),
                1e-12 * scale)
          << name;
      EXPECT_LT(l1_distance(cc::star(cc::twisted_mul(a, b)), cc::twisted_mul(cc::star(b), cc::star(a))),
                1e-12 * cc::norm_l1(a) * cc::norm_l1(b))
          << name;
      EXPECT_LT(l1_distance(cc::star(cc::star(a)), a), 1e-12 * cc::norm_l1(a)) << name;
    }
  }
}

TEST(Crossed, ExpectationOfStarProductIsAlphaInner) {
  // E(f*⋆f) = Σ_g α_g⁻¹(f(g)*f(g))
  std::mt19937_64 rng(3);
  for (const char* name : {"z-m2c", "z12-twisted", "psl2z"}) {
    const auto S = preset(name);
    const auto f = cc::random_cc(S, S->group->ball(2), rng);
    const auto e = cc::expectation(cc::twisted_mul(cc::star(f), f));
    EXPECT_LT(alg::distance(e, cc::alpha_inner(f)), 1e-12 * cc::norm_l1(f) * cc::norm_l1(f)) << name;
  }
}

TEST(Crossed, RegularRepresentationOracle) {
  std::mt19937_64 rng(4);
  for (const char* name : {"z12-twisted", "d6-swap", "z4xz6", "c2-z"}) {
    const auto S = preset(name);
    if (!S->group->is_finite()) continue;
    const auto& els = S->group->elements();
    for (int i = 0; i < 4; ++i) {
      const auto a = cc::random_cc(S, els, rng), b = cc::random_cc(S, els, rng);
      const Eigen::MatrixXcd ra = oracle::regular(a), rb = oracle::regular(b);
      EXPECT_LT((oracle::regular(cc::twisted_mul(a, b)) - ra * rb).norm(), 1e-10 * ra.norm() * rb.norm()) << name;
      EXPECT_LT((oracle::regular(cc::star(a)) - ra.adjoint()).norm(), 1e-12 * ra.norm()) << name;
      EXPECT_LT((cc::compression_on(a, els) - ra).norm(), 1e-12 * ra.norm()) << name;
    }
  }
}

TEST(Crossed, FullRadiusIsWholeGroup) {
  const auto S = preset("z12-twisted");
  EXPECT_EQ(cc::full_radius(*S->group), 6.0);
  std::mt19937_64 rng(5);
  const auto f = cc::random_cc(S, S->group->ball(3), rng);
  const auto rep = cc::compression_matrix(f, cc::full_radius(*S->group));
  EXPECT_EQ(rep.index.size(), 12u);
  EXPECT_EQ(rep.block_dim, 3);
  EXPECT_EQ(rep.matrix.rows(), 36);
}

TEST(Crossed, PathGraphNorms) {
  // δ₁ + δ₋₁ compressed to ball(R) ⊂ Z is the path graph on 2R+1 vertices.
  const auto S = preset("z-scalar");
  const auto one = S->unit();
  const auto f = CcElement::delta(S, {{1}}, one) + CcElement::delta(S, {{-1}}, one);
  for (int R : {1, 4, 16, 64}) EXPECT_NEAR(cc::compressed_norm(f, R, grp::LengthTag::Word), oracle::path_norm(2 * R + 1), 1e-8);
  const auto b = cc::opnorm_bounds(f, {100.0});
  EXPECT_GT(b.lower, 1.999);
  EXPECT_EQ(b.upper, 2.0);
}

TEST(Crossed, NormSandwich) {
  std::mt19937_64 rng(6);
  for (const char* name : {"z-m2c", "f2-scalar", "z12-twisted"}) {
    const auto S = preset(name);
    for (int i = 0; i < 5; ++i) {
      const auto f = cc::random_cc(S, S->group->ball(1), rng);
      const auto b = cc::opnorm_bounds(f, cc::default_schedule(*S->group));
      EXPECT_LE(cc::norm_linf(f), cc::norm_alpha(f) + 1e-12) << name;
      EXPECT_LE(cc::norm_alpha(f), b.lower * (1 + 1e-9)) << name;
      EXPECT_LE(b.lower, b.upper * (1 + 1e-9)) << name;
    }
  }
}

TEST(Crossed, WeightedNormRejectsSmallKappa) {
  const auto S = preset("z-scalar");
  const auto f = CcElement::delta(S, {{2}}, S->unit());
  EXPECT_NEAR(cc::norm_2kappa(f, [](const grp::GroupElement& g) { return 1.0 + std::abs(g.code[0]); }), 3.0, 1e-15);
  EXPECT_THROW(cc::norm_2kappa(f, [](const grp::GroupElement&) { return 0.5; }), std::domain_error);
}
