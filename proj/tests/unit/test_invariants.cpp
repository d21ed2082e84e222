#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gapcert/error.hpp"
#include "support/corpus.hpp"

using namespace gapcert;
using gapcert::testing::cayley;

namespace {

struct ExactCase {
  const char* name;
  SpectralInstance inst;
  Rational edge;
  Rational vertex;
  Rational bip;
};

std::vector<ExactCase> exact_cases() {
  const auto c = [](int n, std::vector<int> s) { return cayley(cyclic_group(n), std::move(s)); };
  return {
      {"K3", c(3, {1, 2}), Rational(1, 1), Rational(2, 1), Rational(1, 4)},
      {"C5", c(5, {1, 4}), Rational(1, 2), Rational(1, 1), Rational(1, 8)},
      {"C4", c(4, {1, 3}), Rational(1, 2), Rational(1, 1), Rational(0, 1)},
      {"C7", c(7, {1, 6}), Rational(1, 3), Rational(2, 3), Rational(1, 12)},
      {"prism", gapcert::testing::prism(), Rational(1, 3), Rational(1, 1), Rational(1, 6)},
      {"petersen", gapcert::testing::load("instances/petersen.json"), Rational(1, 3), Rational(4, 5),
       Rational(1, 6)},
  };
}

std::vector<SpectralInstance> small_connected(int max_n) {
  std::vector<SpectralInstance> out;
  for (int n = 2; n <= max_n; ++n) {
    FamilySpec spec;
    spec.n_min = spec.n_max = n;
    spec.degree_max = 4;
    spec.max_instances = 100000;
    for (auto& m : enumerate_family(spec))
      if (m.instance && m.instance->flags().connected) out.push_back(std::move(*m.instance));
  }
  return out;
}

std::vector<int> random_set(std::mt19937_64& rng, int n) {
  std::vector<int> s;
  for (int v = 0; v < n; ++v)
    if (rng() & 1u) s.push_back(v);
  return s;
}

}  // namespace

TEST(Rational, Normalization) {
  EXPECT_EQ(Rational(2, 8), Rational(1, 4));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
}

TEST(ExactConstants, OracleValues) {
  for (const auto& c : exact_cases()) {
    EXPECT_EQ(edge_cheeger_exact(c.inst), c.edge) << c.name << " " << edge_cheeger_exact(c.inst).str();
    EXPECT_EQ(vertex_cheeger_exact(c.inst), c.vertex) << c.name << " " << vertex_cheeger_exact(c.inst).str();
    EXPECT_EQ(edge_bipartiteness_exact(c.inst), c.bip) << c.name << " " << edge_bipartiteness_exact(c.inst).str();
  }
}

TEST(ExactConstants, CapsEnforced) {
  const auto big = cayley(cyclic_group(15), {1, 14});
  try {
    edge_bipartiteness_exact(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLargeForExact);
  }
  EXPECT_THROW(edge_cheeger_exact(big, 10), Error);
  EXPECT_NO_THROW(edge_bipartiteness_exact(big, 15));
}

TEST(ExactConstants, ZeroBipartitenessIffBipartite) {
  for (const auto& inst : small_connected(13)) {
    const bool zero = edge_bipartiteness_exact(inst) == Rational(0, 1);
    EXPECT_EQ(zero, !inst.flags().nonbipartite) << inst.name();
  }
}

TEST(ExactConstants, BetaFDominatesBetaEdge) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    if (inst.n() > kDefaultMaxExactBipartiteness) continue;
    const auto prof = bottom_eigenfunction(inst, ConditioningPolicy::kReport);
    if (!prof.nowhere_zero) continue;
    const auto c = derived_constants(prof, inst, 0.8);
    EXPECT_GE(c.beta_f, edge_bipartiteness_exact(inst).to_double() - 1e-12) << inst.name();
  }
}

TEST(ExactConstants, DualCheegerSandwich) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    if (inst.n() > kDefaultMaxExactBipartiteness) continue;
    const double b = edge_bipartiteness_exact(inst).to_double();
    const double gap = 1 + spectrum(inst).mu;
    EXPECT_GE(2 * b, gap - 1e-12) << inst.name();
    EXPECT_GE(gap, b * b / 2 - 1e-12) << inst.name();
  }
}

TEST(Overlap, HandExample) {
  // π = shift by 1 on Z_4, 𝒱 = {0, 1}: π⁻¹v ∈ 𝒱 for v = 1 only; outside, v = 3 only.
  const auto o = sigma_overlap(Permutation{1, 2, 3, 0}, {0, 1}, 4);
  EXPECT_EQ(o.agree, 2);
  EXPECT_DOUBLE_EQ(o.sigma, 0.5);
  EXPECT_EQ(o.intersection, (std::vector<int>{1}));
}

TEST(Overlap, DifferenceBound) {
  std::mt19937_64 rng(7);
  for (int n : {5, 9, 16, 31}) {
    for (int trial = 0; trial < 200; ++trial) {
      Permutation pi = identity_permutation(n);
      std::shuffle(pi.begin(), pi.end(), rng);
      const auto a = random_set(rng, n);
      const auto b = random_set(rng, n);
      std::vector<char> in_a(n, 0), in_b(n, 0);
      for (int v : a) in_a[v] = 1;
      for (int v : b) in_b[v] = 1;
      int sym = 0;
      for (int v = 0; v < n; ++v) sym += in_a[v] != in_b[v];
      const double diff = std::abs(sigma_overlap(pi, a, n).sigma - sigma_overlap(pi, b, n).sigma);
      EXPECT_LE(diff, std::sqrt(2.0) * std::sqrt(static_cast<double>(sym) / n) + 1e-12);
    }
  }
}

TEST(Nu, PrismIsOne) {
  const auto r = nu_constant(gapcert::testing::prism());
  EXPECT_TRUE(r.has_index_two);
  EXPECT_EQ(r.subgroups, (std::vector<ElementSet>{{0, 2, 4}}));
  EXPECT_DOUBLE_EQ(r.nu, 1.0);
}

TEST(Nu, OddOrderHasNoIndexTwo) {
  const auto r = nu_constant(cayley(cyclic_group(9), {1, 8}));
  EXPECT_FALSE(r.has_index_two);
  EXPECT_DOUBLE_EQ(r.nu, 1.0);
}

TEST(Nu, WithinUnitInterval) {
  for (const auto& inst : gapcert::testing::full_corpus()) {
    const double nu = nu_constant(inst).nu;
    EXPECT_GE(nu, 0.0);
    EXPECT_LE(nu, 1.0);
  }
}
