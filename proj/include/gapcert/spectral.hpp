#pragma once

#include <string>
#include <vector>

#include "gapcert/graph.hpp"

namespace gapcert {

inline constexpr int kMaxDenseEigenN = 2000;
inline constexpr double kZeroThreshold = 1e-9;      // relative to the max-norm of f
inline constexpr double kResidualTolerance = 1e-8;  // relative to d·‖f‖₂
inline constexpr int kTranslateGridSteps = 21;      // λ ∈ {1, 1/2, ..., 2⁻²⁰}

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double mu = 0.0;                  // smallest / d
  double mu2 = 0.0;                 // second largest / d
};

/// Dense symmetric eigensolve of the adjacency counts. Throws kNotSymmetric for
/// directed input and kUnsupportedParameter above kMaxDenseEigenN.
Spectrum spectrum(const SpectralInstance& inst);

struct SpectralProfile {
  int n = 0;
  int d = 0;
  std::vector<double> eigenvalues;
  double mu = 0.0;
  double mu2 = 0.0;
  int bottom_multiplicity = 0;

  std::vector<double> f;  // unit ℓ² norm
  std::vector<int> supp_plus;
  std::vector<int> supp_minus;
  double residual = 0.0;  // ‖T f − dμ f‖_∞

  // Eigenfunction conditions: f ⟂ 1, nowhere zero, |supp f₊| ≥ |supp f₋|, 0 < κ < 1.
  bool orthogonal_to_constants = false;
  bool nowhere_zero = false;
  bool plus_support_larger = false;
  bool gap_condition = false;
  bool eigen_conditions() const {
    return orthogonal_to_constants && nowhere_zero && plus_support_larger && gap_condition;
  }

  int translates_combined = 0;
  int basis_vectors_combined = 0;
  std::string conditioning_note;  // empty on success
};

enum class ConditioningPolicy { kThrow, kReport };

/// Unit eigenvector for the smallest eigenvalue, made nowhere zero by adding
/// scaled translates f + λ·(τ·f) over the attached action (then other vectors
/// of the eigenspace) and oriented so the positive support is the larger one.
/// Under kThrow a failure to remove zeros raises kConditioningFailed; under
/// kReport the profile comes back with nowhere_zero = false and a note.
SpectralProfile bottom_eigenfunction(const SpectralInstance& inst,
                                     ConditioningPolicy policy = ConditioningPolicy::kThrow);

/// Runs the conditioning procedure from a caller-chosen eigenvector of the
/// bottom eigenvalue. Throws kDegenerateEigenpair if `seed` is not one.
SpectralProfile condition_eigenfunction(const SpectralInstance& inst, const Spectrum& spec,
                                        std::vector<double> seed,
                                        ConditioningPolicy policy = ConditioningPolicy::kThrow);

/// (τ·f)(v) = f(τ⁻¹ v).
std::vector<double> translate_function(const std::vector<double>& f, int tau, const GroupAction& action);

/// (π·f)(v) = f(π⁻¹ v) for a bare permutation.
std::vector<double> permute_function(const std::vector<double>& f, const Permutation& pi);

struct Decomposition {
  std::vector<double> f_str;  // projection onto sign(f)/√n
  std::vector<double> f_sml;
  double norm_f = 0.0;
  double norm_str = 0.0;
  double norm_sml = 0.0;
};

Decomposition decompose(const std::vector<double>& f);
Decomposition decompose(const SpectralProfile& profile);

struct DerivedConstants {
  double kappa = 0.0;
  double sigma_c = 0.0;  // √(κ/(1−κ))
  double theta_c = 0.0;  // √(1−κ)/√2 − √κ
  double xi = 0.0;
  double delta = 0.0;            // closed form, may be ≤ 0 for large κ
  double delta_effective = 0.0;  // delta when in (0, 1/2), else kDeltaFallback
  bool delta_fallback = false;
  double beta_f = 0.0;  // (⟨T1₊,1₊⟩ + ⟨T1₋,1₋⟩)/(d n)

  bool kappa_in_unit = false;  // 0 < κ < 1
  bool kappa_le_fifth = false;
  bool kappa_le_third = false;
  bool kappa_le_1_260 = false;
  bool borderline = false;  // κ within tolerance of some gate

  static constexpr double kDeltaFallback = 0.1;

  /// All κ-only quantities; beta_f is left at zero.
  static DerivedConstants from_kappa(double kappa, double xi);
};

/// Throws kPreconditionViolated when μ₂ = 1.
DerivedConstants derived_constants(const SpectralProfile& profile, const SpectralInstance& inst, double xi);

/// ⟨T 1_A, 1_B⟩ with A, B given as membership masks.
long long edge_count(const SpectralInstance& inst, const std::vector<char>& in_a, const std::vector<char>& in_b);

}  // namespace gapcert
