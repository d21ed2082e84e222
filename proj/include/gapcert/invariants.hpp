#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gapcert/graph.hpp"

namespace gapcert {

inline constexpr int kDefaultMaxExactCheeger = 22;
inline constexpr int kDefaultMaxExactBipartiteness = 13;

/// Non-negative or signed ratio p/q in lowest terms, q > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t p, std::int64_t q);

  std::int64_t num() const noexcept { return p_; }
  std::int64_t den() const noexcept { return q_; }
  double to_double() const noexcept { return static_cast<double>(p_) / static_cast<double>(q_); }
  /// "p/q", or "p" when q = 1.
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) noexcept {
    return static_cast<__int128>(a.p_) * b.q_ < static_cast<__int128>(b.p_) * a.q_;
  }

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

/// min over proper non-empty F of ⟨T1_F, 1_{V∖F}⟩ / (d·min(|F|, |V∖F|)).
/// Gray-code subset scan; throws kTooLargeForExact when n > max_n.
Rational edge_cheeger_exact(const SpectralInstance& inst, int max_n = kDefaultMaxExactCheeger);

/// min over non-empty F with |F| ≤ n/2 of |N(F) ∖ F| / |F|.
Rational vertex_cheeger_exact(const SpectralInstance& inst, int max_n = kDefaultMaxExactCheeger);

/// min over non-zero ψ : V → {−1, 0, 1} of ⟨(dI + T)ψ, ψ⟩ / (2d‖ψ‖²).
Rational edge_bipartiteness_exact(const SpectralInstance& inst, int max_n = kDefaultMaxExactBipartiteness);

struct Overlap {
  int agree = 0;                // numerator of Σ
  double sigma = 0.0;           // agree / n
  std::vector<int> intersection;  // 𝒱 ∩ π(𝒱), sorted
};

/// Σ_{π,𝒱} = (|{v ∈ 𝒱 : π⁻¹v ∈ 𝒱}| + |{v ∉ 𝒱 : π⁻¹v ∉ 𝒱}|) / n and ℐ = 𝒱 ∩ π(𝒱).
Overlap sigma_overlap(const Permutation& pi, const std::vector<int>& vset, int n);

struct NuResult {
  double nu = 1.0;
  bool has_index_two = false;
  std::vector<ElementSet> subgroups;  // index-two subgroups considered
  std::vector<int> best_generator;    // per subgroup, the maximizing i
};

/// ν = 1 without index-two subgroups, otherwise
/// min over H of max over i of min over H-orbits 𝒪 of Σ_{ρ_i, 𝒪}.
NuResult nu_constant(const SpectralInstance& inst);

}  // namespace gapcert
