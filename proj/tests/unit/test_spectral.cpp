#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gapcert/error.hpp"
#include "support/corpus.hpp"

using namespace gapcert;
using gapcert::testing::cayley;

namespace {

bool matches_circulant(double lambda, int n, const std::vector<int>& s) {
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int x : s) sum += std::cos(2.0 * std::numbers::pi * k * x / n);
    if (std::abs(sum - lambda) <= 1e-9) return true;
  }
  return false;
}

}  // namespace

TEST(Spectrum, PrismClosedForm) {
  const auto sp = spectrum(gapcert::testing::prism());
  const std::vector<double> expect{3, 1, 0, 0, -2, -2};
  ASSERT_EQ(sp.eigenvalues.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(sp.eigenvalues[i], expect[i], 1e-12);
  EXPECT_NEAR(sp.mu, -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(sp.mu2, 1.0 / 3.0, 1e-12);
}

TEST(Spectrum, CirculantOracle) {
  for (const auto& inst : gapcert::testing::odd_cyclic_corpus()) {
    const auto sp = spectrum(inst);
    for (double lambda : sp.eigenvalues)
      EXPECT_TRUE(matches_circulant(lambda, inst.n(), *inst.connection_set())) << inst.name() << " " << lambda;
  }
}

TEST(Spectrum, TraceAndFrobenius) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    const auto sp = spectrum(inst);
    double sum = 0.0, sq = 0.0, trace = 0.0, frob = 0.0;
    for (double x : sp.eigenvalues) {
      sum += x;
      sq += x * x;
    }
    for (int u = 0; u < inst.n(); ++u) {
      trace += inst.a(u, u);
      for (int v = 0; v < inst.n(); ++v) frob += static_cast<double>(inst.a(u, v)) * inst.a(u, v);
    }
    EXPECT_NEAR(sum, trace, 1e-9) << inst.name();
    EXPECT_NEAR(sq, frob, 1e-6) << inst.name();
  }
}

TEST(Spectrum, PetersenMultiplicities) {
  const auto sp = spectrum(gapcert::testing::load("instances/petersen.json"));
  const std::vector<double> expect{3, 1, 1, 1, 1, 1, -2, -2, -2, -2};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(sp.eigenvalues[i], expect[i], 1e-9);
}

TEST(Spectrum, DirectedRejected) {
  SpectralInstance directed(GraphKind::kVertexTransitive, 3, {{1, 2, 0}});
  try {
    spectrum(directed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSymmetric);
  }
}

TEST(Eigenfunction, PrismConditioning) {
  const auto prof = bottom_eigenfunction(gapcert::testing::prism());
  EXPECT_EQ(prof.bottom_multiplicity, 2);
  EXPECT_TRUE(prof.eigen_conditions());
  EXPECT_EQ(prof.supp_plus.size() + prof.supp_minus.size(), 6u);
  EXPECT_GE(prof.supp_plus.size(), prof.supp_minus.size());
  EXPECT_LE(prof.residual, 1e-9);
  double norm = 0.0, total = 0.0;
  for (double x : prof.f) {
    norm += x * x;
    total += x;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_NEAR(total, 0.0, 1e-9);
}

TEST(Eigenfunction, SeedWithZerosIsRepaired) {
  const auto p = gapcert::testing::prism();
  std::vector<double> seed(6);
  for (int j = 0; j < 6; ++j) seed[j] = std::sin(std::numbers::pi * j / 3.0);
  const auto prof = condition_eigenfunction(p, spectrum(p), seed);
  EXPECT_TRUE(prof.nowhere_zero);
  EXPECT_GE(prof.translates_combined + prof.basis_vectors_combined, 1);
  EXPECT_LE(prof.residual, 1e-8 * 3);
}

TEST(Eigenfunction, ExplicitCosineSupport) {
  const auto p = gapcert::testing::prism();
  std::vector<double> seed(6);
  for (int j = 0; j < 6; ++j) seed[j] = std::cos(std::numbers::pi * j / 3.0);
  const auto prof = condition_eigenfunction(p, spectrum(p), seed);
  EXPECT_EQ(prof.translates_combined, 0);
  EXPECT_EQ(prof.supp_plus, (std::vector<int>{0, 1, 5}));
  EXPECT_EQ(prof.supp_minus, (std::vector<int>{2, 3, 4}));
}

TEST(Eigenfunction, NonEigenvectorSeedRejected) {
  const auto p = gapcert::testing::prism();
  try {
    condition_eigenfunction(p, spectrum(p), {1, 0, 0, 0, 0, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateEigenpair);
  }
}

TEST(Eigenfunction, Deterministic) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    const auto a = bottom_eigenfunction(inst, ConditioningPolicy::kReport);
    const auto b = bottom_eigenfunction(inst, ConditioningPolicy::kReport);
    EXPECT_EQ(a.supp_plus, b.supp_plus) << inst.name();
    EXPECT_EQ(a.supp_minus, b.supp_minus) << inst.name();
  }
}

TEST(Decomposition, PrismArithmetic) {
  const std::vector<double> f{1, .5, -.5, -1, -.5, .5};
  const auto dec = decompose(f);
  // ⟨f, sign f⟩ = 4, so f_str = (4/6)·sign(f).
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(dec.f_str[j], (f[j] > 0 ? 1 : -1) * 4.0 / 6.0, 1e-12);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(dec.f_str[j] + dec.f_sml[j], f[j], 1e-12);
  EXPECT_NEAR(dec.norm_f * dec.norm_f, 3.0, 1e-12);
  EXPECT_NEAR(dec.norm_str * dec.norm_str, 6 * 16.0 / 36.0, 1e-12);
  const double kappa = 0.5;
  EXPECT_LE(dec.norm_sml * dec.norm_sml, kappa * 3.0 + 1e-9);
  EXPECT_GE(dec.norm_str * dec.norm_str, (1 - kappa) * 3.0 - 1e-9);
}

TEST(Decomposition, NormBoundsOnCorpus) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    const auto prof = bottom_eigenfunction(inst, ConditioningPolicy::kReport);
    const double kappa = (1 + prof.mu) / (1 - prof.mu2);
    if (!(kappa > 0 && kappa < 1)) continue;
    const auto dec = decompose(prof);
    EXPECT_LE(dec.norm_sml, std::sqrt(kappa) * dec.norm_f + 1e-9) << inst.name();
    EXPECT_GE(dec.norm_str, std::sqrt(1 - kappa) * dec.norm_f - 1e-9) << inst.name();
    double inner = 0.0;
    for (int v = 0; v < inst.n(); ++v) inner += dec.f_str[v] * dec.f_sml[v];
    EXPECT_NEAR(inner, 0.0, 1e-9) << inst.name();
  }
}

TEST(DerivedConstants, FrozenValues) {
  const auto c = DerivedConstants::from_kappa(1.0 / 260.0, 0.8);
  EXPECT_NEAR(c.sigma_c, 0.0621369766001, 1e-11);
  EXPECT_NEAR(c.theta_c, 0.643728283118, 1e-11);
  EXPECT_NEAR(c.delta, 5.68255399642e-4, 1e-13);
  EXPECT_FALSE(c.delta_fallback);
  EXPECT_TRUE(c.kappa_le_1_260);
  const auto big = DerivedConstants::from_kappa(0.5, 0.8);
  EXPECT_LE(big.delta, 0.0);
  EXPECT_TRUE(big.delta_fallback);
  EXPECT_DOUBLE_EQ(big.delta_effective, DerivedConstants::kDeltaFallback);
}

TEST(DerivedConstants, PrismBeta) {
  const auto p = gapcert::testing::prism();
  std::vector<double> seed(6);
  for (int j = 0; j < 6; ++j) seed[j] = std::cos(std::numbers::pi * j / 3.0);
  const auto c = derived_constants(condition_eigenfunction(p, spectrum(p), seed), p, 0.8);
  EXPECT_NEAR(c.kappa, 0.5, 1e-12);
  // Edges 1–5 inside supp f₊ and 2–4 inside supp f₋, each counted twice.
  EXPECT_NEAR(c.beta_f, 4.0 / 18.0, 1e-15);
}

TEST(Translate, InverseConvention) {
  const auto g = cyclic_group(4);
  const auto act = left_translation_action(g);
  const std::vector<double> f{1, 2, 3, 4};
  EXPECT_EQ(translate_function(f, 1, act), (std::vector<double>{4, 1, 2, 3}));
  EXPECT_EQ(permute_function(f, Permutation{1, 2, 3, 0}), (std::vector<double>{4, 1, 2, 3}));
}
