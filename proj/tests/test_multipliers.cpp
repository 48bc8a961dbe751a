#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "twisted/cli.hpp"
#include "twisted/multipliers.hpp"
#include "twisted/summation.hpp"

using namespace twisted;
using cc::CcElement;
using grp::GroupElement;

namespace {

sys::SystemPtr preset(const std::string& name) { return cli::build_system(cli::preset_system(name)); }

Eigen::MatrixXcd z12_character_pair(const GroupElement& g) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, 2 * M_PI * g.code[0] / 12.0);
  return u;
}

double full_norm(const CcElement& f) {
  const auto& G = *f.system()->group;
  return cc::compressed_norm(f, cc::full_radius(G), G.default_length());
}

// Left regular representation of Z4 on ℂ⁴ as vectors in A⁴ with A = ℂ.
hm::ModuleVector shifted(const sys::SystemPtr& S, const std::vector<double>& v, int s) {
  hm::ModuleVector out = hm::ModuleVector::zero(S->algebra, 4);
  for (int i = 0; i < 4; ++i) out.entries[static_cast<std::size_t>((i + s) % 4)] = alg::Element::scalar(S->algebra, v[static_cast<std::size_t>(i)]);
  return out;
}

sys::SystemPtr z4_scalar() {
  const alg::AlgebraSpec A = alg::AlgebraSpec::scalars();
  return sys::make_system(A, std::make_shared<const grp::Group>(grp::GroupSpec::cyclic(4)), sys::trivial_action(A),
                          sys::trivial_cocycle(A), "trivial");
}

}  // namespace

TEST(Multipliers, PdCheck) {
  const grp::Group G(grp::GroupSpec::cyclic(12));
  const auto F = G.ball(2);
  const auto fejer = [&](const GroupElement& g) { return alg::Complex(sum::fejer_value(G, g, F)); };
  EXPECT_TRUE(mult::pd_check(fejer, G.elements(), G).is_pd);
  // δ₁ + δ₋₁ has eigenvalues 2cos(2πk/12), some negative.
  const auto hop = [](const GroupElement& g) { return alg::Complex(g.code[0] == 1 || g.code[0] == 11 ? 1.0 : 0.0); };
  const auto r = mult::pd_check(hop, G.elements(), G);
  EXPECT_FALSE(r.is_pd);
  EXPECT_NEAR(r.min_eigenvalue, -2.0, 1e-12);
  const auto one_sided = [](const GroupElement& g) { return alg::Complex(g.code[0] == 1 ? 1.0 : 0.0); };
  EXPECT_THROW(mult::pd_check(one_sided, G.elements(), G), std::domain_error);
}

TEST(Multipliers, PdKernelsContractOnZ12) {
  const auto S = preset("z12-twisted");
  const auto& G = *S->group;
  std::mt19937_64 rng(1);
  for (int N : {1, 2, 3}) {
    const auto F = G.ball(N);
    const auto T = mult::scalar_multiplier(
        [&G, F](const GroupElement& g) { return alg::Complex(sum::fejer_value(G, g, F)); }, 1.0, "fejer");
    for (int i = 0; i < 5; ++i) {
      const auto f = cc::random_cc(S, G.elements(), rng);
      EXPECT_LE(full_norm(mult::apply_multiplier(T, f)), full_norm(f) + 1e-9);
    }
  }
}

TEST(Multipliers, MatrixCoefficientBound) {
  const auto S = preset("z12-twisted");
  const auto rep = hm::alpha_tensor_unitary(S, 2, z12_character_pair);
  std::mt19937_64 rng(2);
  const auto x = hm::random_vector(S->algebra, 2, rng), y = hm::random_vector(S->algebra, 2, rng);
  const auto T = mult::make_matrix_coeff_multiplier(rep, x, y);
  EXPECT_EQ(alg::distance(T(S->group->identity(), S->unit()), hm::inner(x, y)), 0.0);
  for (int i = 0; i < 10; ++i) {
    const auto f = cc::random_cc(S, S->group->elements(), rng);
    EXPECT_LE(full_norm(mult::apply_multiplier(T, f)), T.declared_bound * full_norm(f) + 1e-9);
  }
}

TEST(Multipliers, GilbertFromRegularTranslates) {
  const auto S = z4_scalar();
  const std::vector<double> xi{1.0, 0.5, 0.0, -0.25}, eta{0.3, 0.0, 1.0, 0.2};
  auto data = mult::gilbert_left_mul(S, 4);
  for (int s = 0; s < 4; ++s) {
    data.eta1.emplace(GroupElement{{s}}, shifted(S, xi, s));
    data.eta2.emplace(GroupElement{{s}}, shifted(S, eta, s));
    data.domain.push_back({{s}});
  }
  const auto T = mult::make_gilbert_multiplier(data, mult::Side::Left);
  // φ(g) = ⟨ξ, λ_{g⁻¹} η⟩ = Σ_i ξ_i η_{i+g}
  for (int g = 0; g < 4; ++g) {
    double expect = 0.0;
    for (int i = 0; i < 4; ++i) expect += xi[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>((i + g) % 4)];
    EXPECT_NEAR(std::abs(T({{g}}, S->unit()).block(0)(0, 0) - expect), 0.0, 1e-14) << g;
  }
  EXPECT_NEAR(T.declared_bound, std::sqrt(1.3125) * std::sqrt(1.13), 1e-12);

  data.eta2.at({{2}}) = shifted(S, eta, 3);
  EXPECT_THROW(mult::make_gilbert_multiplier(data, mult::Side::Left), mult::ConditionViolation);
}

TEST(Multipliers, GilbertCentralityViolation) {
  const auto S = preset("z-m2c");
  auto data = mult::gilbert_left_mul(S, 1);
  hm::ModuleVector v = hm::ModuleVector::zero(S->algebra, 1);
  v.entries[0] = alg::matrix_unit(S->algebra, 0, 0, 0);
  data.eta1.emplace(S->group->identity(), v);
  data.eta2.emplace(S->group->identity(), v);
  data.domain = {S->group->identity()};
  try {
    mult::make_gilbert_multiplier(data, mult::Side::Left);
    FAIL() << "expected a centrality violation";
  } catch (const mult::ConditionViolation& e) {
    EXPECT_GT(e.residual(), 0.5);
    EXPECT_EQ(e.witness(), "t=e");
  }
}

TEST(Multipliers, EndomorphismConditions) {
  const auto C2 = preset("c2-z");
  const auto swap = alg::Morphism::permutation(C2->algebra, {1, 0});
  std::mt19937_64 rng(3);
  const std::vector<alg::Element> probes{alg::random_element(C2->algebra, rng)};
  const auto T = mult::make_endo_multiplier(C2, swap, C2->group->ball(2), probes);
  EXPECT_EQ(T.recipe, mult::Recipe::Endomorphism);

  const auto D6 = preset("d6-swap");
  alg::Morphism collapse = alg::Morphism::identity(D6->algebra);
  collapse.source = {0, 0};
  EXPECT_THROW(mult::make_endo_multiplier(D6, collapse, D6->group->elements(), probes), mult::ConditionViolation);
}

TEST(Multipliers, SupportIsRespected) {
  const auto S = preset("z-scalar");
  const auto T = mult::scalar_multiplier([](const GroupElement&) { return alg::Complex(2.0); }, 2.0, "two",
                                         std::vector<GroupElement>{{{1}}, {{0}}});
  std::mt19937_64 rng(4);
  const auto f = cc::random_cc(S, S->group->ball(2), rng);
  const auto g = mult::apply_multiplier(T, f);
  EXPECT_EQ(g.support(), (std::vector<GroupElement>{{{0}}, {{1}}}));
  EXPECT_EQ(alg::distance(g.at({{1}}), 2.0 * f.at({{1}})), 0.0);
}

TEST(Multipliers, NormProbeOfIdentityIsOne) {
  const auto S = preset("z12-twisted");
  const auto p = mult::multiplier_norm_probe(mult::identity_multiplier(), S, 4, 0.0, 9);
  EXPECT_TRUE(p.exact_denominator);
  ASSERT_EQ(p.ratios.size(), 5u);
  for (double r : p.ratios) EXPECT_NEAR(r, 1.0, 1e-9);
}
