#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twisted/cli.hpp"
#include "twisted/summation.hpp"

using namespace twisted;
using cc::CcElement;
using grp::GroupElement;
using grp::LengthTag;

namespace {

sys::SystemPtr preset(const std::string& name) { return cli::build_system(cli::preset_system(name)); }

}  // namespace

TEST(Fejer, ClosedFormOnZ) {
  const grp::Group Z(grp::GroupSpec::zd(1));
  for (int N : {1, 2, 5, 16}) {
    const auto F = Z.folner(N);
    for (int n = -20; n <= 20; ++n) EXPECT_NEAR(sum::fejer_value(Z, {{n}}, F), oracle::fejer_z(n, N), 1e-15);
  }
}

TEST(Fejer, KernelsArePositiveDefinite) {
  const grp::Group Z(grp::GroupSpec::zd(1));
  for (int N = 1; N <= 16; ++N) {
    const auto F = Z.folner(N);
    const auto r = mult::pd_check([&](const GroupElement& g) { return alg::Complex(sum::fejer_value(Z, g, F)); },
                                  Z.ball(N), Z);
    EXPECT_TRUE(r.is_pd) << N << " " << r.min_eigenvalue;
  }
}

TEST(Fejer, ConvergenceMatchesClosedForm) {
  const auto S = preset("z-m2c");
  std::mt19937_64 rng(1);
  const auto f = cc::random_cc(S, S->group->ball(3), rng);
  const std::vector<int> Ns{1, 4, 16, 256};
  const auto net = sum::fejer_net(S, Ns);
  const auto rep = sum::run_convergence(net, f, {4.0}, sum::default_point_samples(f, 2));
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    double expect = 0.0;
    for (const auto& [g, a] : f.terms()) expect += (1.0 - oracle::fejer_z(g.code[0], Ns[i])) * alg::norm(a);
    EXPECT_NEAR(rep.rows[i].l1_error, expect, 1e-12);
  }
  EXPECT_TRUE(rep.pointwise_monotone);

  // δ₁ + δ₋₁: the error is exactly 2/N.
  const auto h = CcElement::delta(S, {{1}}, S->unit()) + CcElement::delta(S, {{-1}}, S->unit());
  const auto hrep = sum::run_convergence(net, h, {}, sum::default_point_samples(h, 2));
  EXPECT_NEAR(hrep.rows.back().l1_error, 2.0 / 256, 1e-15);
  EXPECT_LT(hrep.rows.back().l1_error, 1e-2);
}

TEST(Fejer, FiniteGroupKernelsUseBalls) {
  const auto S = preset("z12-twisted");
  const auto net = sum::fejer_net(S, {1, 6});
  // ball(1) = {−1, 0, 1}: φ(1) = 2/3, φ(3) = 0; ball(6) is the whole group.
  EXPECT_NEAR(net.members[0]({{1}}, S->unit()).block(1)(0, 0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(alg::max_abs(net.members[0]({{3}}, S->unit())), 0.0);
  EXPECT_EQ(alg::distance(net.members[1]({{5}}, S->unit()), S->unit()), 0.0);
}

TEST(AbelPoisson, TailClosedForms) {
  // Z, l1: Σ_{|n|>R} r^{|n|} = 2r^{R+1}/(1−r)
  for (double r : {0.5, 0.9}) {
    for (long long R : {0LL, 3LL, 10LL}) {
      const double expect = 2 * std::pow(r, R + 1) / (1 - r);
      EXPECT_NEAR(sum::abel_poisson_tail(1, LengthTag::L1, r, R), expect, 1e-12 * expect);
    }
  }
  // Z², l1: shells of size 4k, Σ_{k>R} 4k r^k = 4r^{R+1}((R+1) − Rr)/(1−r)²
  const double r = 0.7;
  for (long long R : {0LL, 5LL}) {
    const double expect = 4 * std::pow(r, R + 1) * ((R + 1) - R * r) / ((1 - r) * (1 - r));
    EXPECT_NEAR(sum::abel_poisson_tail(2, LengthTag::L1, r, R), expect, 1e-11 * expect);
  }
  EXPECT_THROW(sum::abel_poisson_tail(1, LengthTag::L1, 1.0, 2), std::invalid_argument);
}

TEST(AbelPoisson, RadiusIsSmallestCertified) {
  // Tail at R is 2^{1−R} for r = 1/2 on Z.
  EXPECT_EQ(sum::abel_poisson_radius(1, LengthTag::L1, 0.5, 1e-8), 28);
  for (auto L : {LengthTag::L1, LengthTag::L2, LengthTag::L2Squared}) {
    const auto R = sum::abel_poisson_radius(2, L, 0.9, 1e-8);
    EXPECT_LT(sum::abel_poisson_tail(2, L, 0.9, R), 1e-8);
    if (R > 0) EXPECT_GE(sum::abel_poisson_tail(2, L, 0.9, R - 1), 1e-8);
  }
}

TEST(AbelPoisson, KernelsArePositiveDefinite) {
  const grp::Group Z2(grp::GroupSpec::zd(2));
  for (auto L : {LengthTag::L1, LengthTag::L2, LengthTag::L2Squared}) {
    const auto ball = Z2.ball(4, L);
    for (double r : {0.5, 0.9, 0.99}) {
      const auto res = mult::pd_check([&](const GroupElement& g) { return alg::Complex(std::pow(r, Z2.length(g, L))); },
                                      ball, Z2);
      EXPECT_TRUE(res.is_pd) << grp::length_name(L) << " r=" << r << " " << res.min_eigenvalue;
    }
  }
}

TEST(AbelPoisson, FivePointErrorAtHighR) {
  const auto S = preset("torus");
  CcElement f(S);
  f.set({{0, 0}}, S->unit());
  for (auto g : std::vector<GroupElement>{{{1, 0}}, {{-1, 0}}, {{0, 1}}, {{0, -1}}}) f.set(g, 0.2 * S->unit());
  for (auto L : {LengthTag::L1, LengthTag::L2, LengthTag::L2Squared}) {
    const auto net = sum::abel_poisson_net(S, L, {0.5, 0.9, 0.999}, 1e-8);
    const auto rep = sum::run_convergence(net, f, {}, sum::default_point_samples(f, 3));
    // Neighbours have length 1 in all three: 4·0.2·(1 − r) plus the certified tail.
    EXPECT_NEAR(rep.rows.back().l1_error, 0.8 * 0.001 + rep.rows.back().tail_allowance, 1e-12);
    EXPECT_LT(rep.rows.back().l1_error, 1e-3);
    EXPECT_LE(rep.rows.back().tail_allowance, 1e-8);
  }
  EXPECT_THROW(sum::abel_poisson_net(preset("z12-twisted"), LengthTag::L1, {0.5}), std::domain_error);
}

TEST(ApproxData, UniformVectorsGiveFejerKernel) {
  const auto S = preset("z-scalar");
  const auto rep = hm::trivial_rep(S);
  const auto F = S->group->folner(5);
  sum::ApproxData d;
  for (const auto& h : F) d.xi.emplace(h, hm::ModuleVector{{alg::Element::scalar(S->algebra, 1.0 / std::sqrt(5.0))}});
  d.eta = d.xi;
  const auto T = sum::approx_data_multiplier(rep, d);
  EXPECT_NEAR(T.declared_bound, 1.0, 1e-14);
  EXPECT_EQ(sum::family_norm(d.xi), sum::family_norm(d.eta));
  for (int n = -6; n <= 6; ++n)
    EXPECT_NEAR(std::abs(T({{n}}, S->unit()).block(0)(0, 0) - oracle::fejer_z(n, 5)), 0.0, 1e-14) << n;
  EXPECT_EQ(T.g_support->size(), 9u);
}
