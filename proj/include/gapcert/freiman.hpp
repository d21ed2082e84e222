#pragma once

// Correlations ⟨f₊, (τ·f)₊⟩ over the acting group, the two-cluster test, and
// recovery of the index-two subgroup and orbit that the clusters point at.

#include <optional>
#include <string>
#include <vector>

#include "gapcert/spectral.hpp"

namespace gapcert {

inline constexpr double kCorrelationTieTolerance = 1e-12;

struct CorrelationProfile {
  std::vector<double> values;  // indexed by group element
  double norm_plus_sq = 0.0;   // ‖f₊‖₂²

  /// Builds a profile directly from values, bypassing any spectrum.
  static CorrelationProfile synthetic(std::vector<double> values, double norm_plus_sq);
};

/// values[τ] = Σ f(v)·f(τ⁻¹v) over v ∈ supp f₊ ∩ τ·supp f₊.
CorrelationProfile correlation_profile(const SpectralProfile& profile, const GroupAction& action);

struct DichotomyVerdict {
  double delta = 0.0;
  bool dichotomy_holds = false;  // some τ lies strictly inside the middle interval
  std::optional<int> witness;    // first such τ
  double witness_ratio = 0.0;    // values[witness] / ‖f₊‖²
};

/// Throws kPreconditionViolated unless 0 < delta < 1/2.
DichotomyVerdict dichotomy_test(const CorrelationProfile& corr, double delta);

struct IndexTwoExtraction {
  ElementSet subgroup;
  bool contains_identity = false;
  bool closed = false;
  bool index_two = false;
};

/// H = {τ : values[τ] ≥ (1−δ)‖f₊‖²}, verified to be a subgroup of index two.
/// Throws kNotASubgroup or kWrongIndex; `context` (for example the status of
/// the κ and ξ gates) is appended to the message. Throws kPreconditionViolated
/// when the profile has a dichotomy witness.
IndexTwoExtraction extract_index_two(const CorrelationProfile& corr, const FiniteGroup& group, double delta,
                                     const std::string& context = {});

struct OrbitConcentration {
  double lhs = 0.0;  // min over H-orbits 𝒪 of |supp f₊ ∩ 𝒪ᶜ| / n
  double rhs = 0.0;  // ς/√2 + (√δ/2)·√((1+ς+κ+2√2√κ)/(2(1−κ)))
  int orbit = 0;     // index of the minimizing orbit
  std::vector<std::vector<int>> orbits;
};

/// Closed-form right-hand side of the orbit concentration bound.
double orbit_concentration_bound(const DerivedConstants& c);

/// Throws kHypothesisNotMet unless κ ≤ 1/260, ξ ≤ 4/5 and δ > 0.
OrbitConcentration orbit_concentration(const ElementSet& subgroup, const SpectralProfile& profile,
                                       const DerivedConstants& derived, const GroupAction& action);

struct Left2RightFailure {
  int tau = 0;
  int u = 0;
  int v = 0;
};

struct Left2RightResult {
  bool candidate_available = false;
  bool verified = false;
  bool rho_equals_tau = false;    // every verified ϱ_τ is τ itself
  std::string source;             // "supplied", "translation" or "kind-specific"
  std::vector<Permutation> map;   // ϱ_τ per group element when verified
  std::optional<Left2RightFailure> failure;
};

/// Checks a_{u,v} = a_{ϱ_τ(u), τ(v)} for every τ in the action. With a supplied
/// map only that map is tested. Otherwise ϱ_τ = τ is tried first and, for the
/// four group-based kinds, the kind-specific companion
///   cayley_sum u ↦ u·g⁻¹, twisted_cayley u ↦ σ(g)·u, twisted_cayley_sum u ↦ u·σ(g)⁻¹.
Left2RightResult verify_left2right(const SpectralInstance& inst,
                                   const std::optional<std::vector<Permutation>>& supplied = std::nullopt);

}  // namespace gapcert
