#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "twisted/cli.hpp"
#include "twisted/hilbmod.hpp"

using namespace twisted;
using hm::ModuleVector;

namespace {

sys::SystemPtr preset(const std::string& name) { return cli::build_system(cli::preset_system(name)); }

Eigen::MatrixXcd z12_character_pair(const grp::GroupElement& g) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, 2 * M_PI * g.code[0] / 12.0);
  return u;
}

}  // namespace

TEST(Module, InnerProductAxioms) {
  std::mt19937_64 rng(1);
  const alg::AlgebraSpec A{{2, 1}};
  const auto x = hm::random_vector(A, 3, rng), y = hm::random_vector(A, 3, rng);
  const auto a = alg::random_element(A, rng);
  EXPECT_LT(alg::distance(hm::inner(x, y).adjoint(), hm::inner(y, x)), 1e-13);
  EXPECT_LT(alg::distance(hm::inner(x, hm::right_mul(y, a)), hm::inner(x, y) * a), 1e-13);
  EXPECT_TRUE(alg::classify(hm::inner(x, x)).positive);
  // Cauchy–Schwarz in the module norm.
  EXPECT_LE(alg::norm(hm::inner(x, y)), hm::module_norm(x) * hm::module_norm(y) + 1e-12);
  EXPECT_NEAR(hm::module_norm(ModuleVector::basis(A, 3, 1)), 1.0, 1e-15);
}

TEST(Module, OperatorAlgebra) {
  std::mt19937_64 rng(2);
  const alg::AlgebraSpec A{{2, 1}};
  hm::ModuleOperator T{2, {}};
  for (int i = 0; i < 4; ++i) T.entries.push_back(alg::random_element(A, rng));
  const auto x = hm::random_vector(A, 2, rng), y = hm::random_vector(A, 2, rng);
  // ⟨Tx, y⟩ = ⟨x, T*y⟩
  EXPECT_LT(alg::distance(hm::inner(T.apply(x), y), hm::inner(x, T.adjoint().apply(y))), 1e-12);
  const auto inv = T.inverse();
  EXPECT_LT(hm::distance(inv.apply(T.apply(x)), x), 1e-9);
  EXPECT_LT(hm::distance(T.compose(inv).apply(y), y), 1e-9);
}

TEST(Module, TrivialRepresentationIsEquivariant) {
  std::mt19937_64 rng(3);
  for (const char* name : {"z-m2c", "z12-twisted", "psl2z"}) {
    const auto rep = hm::trivial_rep(preset(name));
    const auto report = hm::validate_equivariant(rep, hm::default_samples(rep, rng));
    EXPECT_TRUE(report.passed) << name << " " << report.witness;
  }
}

TEST(Module, AlphaTensorCharacterOnZ12) {
  std::mt19937_64 rng(4);
  const auto S = preset("z12-twisted");
  const auto rep = hm::alpha_tensor_unitary(S, 2, z12_character_pair);
  const auto report = hm::validate_equivariant(rep, hm::default_samples(rep, rng));
  EXPECT_TRUE(report.passed) << report.witness;
  EXPECT_LT(report.max_violation(), 1e-12);
}

TEST(Module, NonHomomorphicUnitaryFailsAxiomTwo) {
  std::mt19937_64 rng(5);
  const auto S = preset("z12-twisted");
  auto bad = [](const grp::GroupElement& g) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
    if (g.code[0] == 5) u(1, 1) = -1.0;
    return u;
  };
  const auto rep = hm::alpha_tensor_unitary(S, 2, bad);
  const auto report = hm::validate_equivariant(rep, hm::default_samples(rep, rng));
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.axiom2, 1e-3);
}

TEST(Module, CentralPartDimension) {
  // Z_X for ℓ ⊗ 1 on Aⁿ is Z(A)ⁿ; Z(M2 ⊕ ℂ) has dimension 2.
  const auto S = preset("z-m2c");
  EXPECT_EQ(hm::central_part(hm::trivial_rep(S)).size(), 2u);
  const auto rep2 = hm::alpha_tensor_unitary(S, 2, [](const grp::GroupElement&) {
    return Eigen::MatrixXcd::Identity(2, 2).eval();
  });
  const auto Z = hm::central_part(rep2);
  EXPECT_EQ(Z.size(), 4u);
  std::mt19937_64 rng(6);
  const auto a = alg::random_element(S->algebra, rng);
  for (const auto& z : Z) EXPECT_LT(hm::distance(rep2.rho(a).apply(z), hm::right_mul(z, a)), 1e-10);
}

TEST(Module, AdRhoOfUnitIsIdentity) {
  std::mt19937_64 rng(7);
  const auto S = preset("z-m2c");
  const auto rep = hm::trivial_rep(S);
  const auto y = hm::random_vector(S->algebra, 1, rng);
  EXPECT_EQ(hm::distance(hm::ad_rho(rep, S->unit(), y), y), 0.0);
}
