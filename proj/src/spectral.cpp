#include "gapcert/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gapcert/error.hpp"

namespace gapcert {

namespace {

std::vector<double> apply_t(const SpectralInstance& inst, const std::vector<double>& f) {
  std::vector<double> out(inst.n(), 0.0);
  for (const auto& rho : inst.rho())
    for (int v = 0; v < inst.n(); ++v) out[rho[v]] += f[v];
  return out;
}

double norm2(const std::vector<double>& f) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return std::sqrt(s);
}

double norm_inf(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

double residual_inf(const SpectralInstance& inst, const std::vector<double>& f, double lambda) {
  const auto tf = apply_t(inst, f);
  double r = 0.0;
  for (int v = 0; v < inst.n(); ++v) r = std::max(r, std::abs(tf[v] - lambda * f[v]));
  return r;
}

bool is_eigenvector(const SpectralInstance& inst, const std::vector<double>& f, double lambda) {
  return residual_inf(inst, f, lambda) <= kResidualTolerance * inst.d() * norm2(f);
}

std::vector<char> support_mask(const std::vector<double>& f) {
  const double thr = kZeroThreshold * norm_inf(f);
  std::vector<char> mask(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) mask[v] = std::abs(f[v]) > thr;
  return mask;
}

std::size_t count(const std::vector<char>& mask) { return std::count(mask.begin(), mask.end(), 1); }

bool covers(const std::vector<char>& big, const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t v = 0; v < big.size(); ++v)
    if ((a[v] || b[v]) && !big[v]) return false;
  return true;
}

// Looks for f + λg whose support contains supp f ∪ supp g; only useful when g
// reaches a vertex f misses.
bool try_combine(std::vector<double>& f, const std::vector<double>& g) {
  const auto sf = support_mask(f);
  const auto sg = support_mask(g);
  bool adds = false;
  for (std::size_t v = 0; v < f.size(); ++v) adds = adds || (sg[v] && !sf[v]);
  if (!adds) return false;
  double lambda = 1.0;
  for (int step = 0; step < kTranslateGridSteps; ++step, lambda *= 0.5) {
    std::vector<double> c(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) c[v] = f[v] + lambda * g[v];
    if (covers(support_mask(c), sf, sg)) {
      f = std::move(c);
      return true;
    }
  }
  return false;
}

void normalize(std::vector<double>& f) {
  const double s = norm2(f);
  for (double& x : f) x /= s;
}

// Eigenvectors whose eigenvalue matches the smallest one.
struct BottomEigenspace {
  double lambda = 0.0;
  std::vector<std::vector<double>> basis;
};

BottomEigenspace bottom_eigenspace(const SpectralInstance& inst, Spectrum& out_spec) {
  if (!inst.flags().undirected) throw Error(ErrorCode::kNotSymmetric, "adjacency counts are not symmetric");
  if (inst.n() > kMaxDenseEigenN)
    throw Error(ErrorCode::kUnsupportedParameter,
                "dense eigensolve limited to n <= " + std::to_string(kMaxDenseEigenN));
  const int n = inst.n();
  Eigen::MatrixXd a(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) a(u, v) = inst.a(u, v);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::kDegenerateEigenpair, "eigensolver did not converge");

  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  out_spec.eigenvalues.assign(n, 0.0);
  for (int k = 0; k < n; ++k) out_spec.eigenvalues[k] = ev(n - 1 - k);
  const double d = inst.d();
  out_spec.mu = ev(0) / d;
  out_spec.mu2 = n >= 2 ? ev(n - 2) / d : ev(0) / d;

  BottomEigenspace space;
  space.lambda = ev(0);
  for (int k = 0; k < n && ev(k) - ev(0) <= kResidualTolerance * d; ++k) {
    std::vector<double> col(n);
    for (int v = 0; v < n; ++v) col[v] = solver.eigenvectors()(v, k);
    space.basis.push_back(std::move(col));
  }
  return space;
}

SpectralProfile condition_impl(const SpectralInstance& inst, const Spectrum& spec, double lambda,
                               std::vector<double> f, const std::vector<std::vector<double>>& basis,
                               ConditioningPolicy policy) {
  SpectralProfile p;
  p.n = inst.n();
  p.d = inst.d();
  p.eigenvalues = spec.eigenvalues;
  p.mu = spec.mu;
  p.mu2 = spec.mu2;
  p.bottom_multiplicity = static_cast<int>(basis.size());
  p.gap_condition = 1.0 + p.mu > 0.0 && 1.0 + p.mu < 1.0 - p.mu2;

  if (norm2(f) == 0.0 || !is_eigenvector(inst, f, lambda))
    throw Error(ErrorCode::kDegenerateEigenpair, "seed is not an eigenvector of the smallest eigenvalue");
  normalize(f);

  while (count(support_mask(f)) < f.size()) {
    bool progressed = false;
    if (inst.has_action()) {
      const GroupAction& act = inst.action();
      for (int tau = 0; tau < act.group().order() && !progressed; ++tau) {
        auto g = translate_function(f, tau, act);
        if (!is_eigenvector(inst, g, lambda)) continue;
        if (try_combine(f, g)) {
          ++p.translates_combined;
          progressed = true;
        }
      }
    }
    for (std::size_t k = 0; k < basis.size() && !progressed; ++k) {
      if (try_combine(f, basis[k])) {
        ++p.basis_vectors_combined;
        progressed = true;
      }
    }
    if (!progressed) break;
    normalize(f);
    if (!is_eigenvector(inst, f, lambda))
      throw Error(ErrorCode::kDegenerateEigenpair, "conditioned combination left the eigenspace");
  }

  const auto mask = support_mask(f);
  p.nowhere_zero = count(mask) == f.size();
  if (!p.nowhere_zero) {
    p.conditioning_note = "no combination of translates or eigenspace vectors removed every zero (" +
                          std::to_string(f.size() - count(mask)) + " zero entries remain)";
    if (policy == ConditioningPolicy::kThrow) throw Error(ErrorCode::kConditioningFailed, p.conditioning_note);
  }

  auto split = [&](const std::vector<double>& h, std::vector<int>& plus, std::vector<int>& minus) {
    plus.clear();
    minus.clear();
    for (int v = 0; v < static_cast<int>(h.size()); ++v) {
      if (!mask[v]) continue;
      (h[v] > 0 ? plus : minus).push_back(v);
    }
  };
  split(f, p.supp_plus, p.supp_minus);
  bool flip = p.supp_plus.size() < p.supp_minus.size();
  if (p.supp_plus.size() == p.supp_minus.size()) {
    for (int v = 0; v < p.n; ++v)
      if (mask[v]) {
        flip = f[v] < 0;
        break;
      }
  }
  if (flip) {
    for (double& x : f) x = -x;
    std::swap(p.supp_plus, p.supp_minus);
  }
  p.plus_support_larger = p.supp_plus.size() >= p.supp_minus.size();

  p.residual = residual_inf(inst, f, lambda);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0);
  p.orthogonal_to_constants = std::abs(mean) <= 1e-9 * std::sqrt(static_cast<double>(p.n));
  p.f = std::move(f);
  return p;
}

}  // namespace

Spectrum spectrum(const SpectralInstance& inst) {
  Spectrum spec;
  bottom_eigenspace(inst, spec);
  return spec;
}

SpectralProfile bottom_eigenfunction(const SpectralInstance& inst, ConditioningPolicy policy) {
  Spectrum spec;
  const auto space = bottom_eigenspace(inst, spec);
  return condition_impl(inst, spec, space.lambda, space.basis.front(), space.basis, policy);
}

SpectralProfile condition_eigenfunction(const SpectralInstance& inst, const Spectrum& spec,
                                        std::vector<double> seed, ConditioningPolicy policy) {
  if (static_cast<int>(seed.size()) != inst.n())
    throw Error(ErrorCode::kPreconditionViolated, "seed length differs from vertex count");
  Spectrum fresh;
  const auto space = bottom_eigenspace(inst, fresh);
  return condition_impl(inst, spec, space.lambda, std::move(seed), space.basis, policy);
}

std::vector<double> translate_function(const std::vector<double>& f, int tau, const GroupAction& action) {
  return permute_function(f, action.perm(tau));
}

std::vector<double> permute_function(const std::vector<double>& f, const Permutation& pi) {
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[pi[x]] = f[x];
  return out;
}

Decomposition decompose(const std::vector<double>& f) {
  const double n = static_cast<double>(f.size());
  Decomposition dec;
  double coeff = 0.0;  // ⟨f, sign(f)⟩ / n
  for (double x : f) coeff += std::abs(x);
  coeff /= n;
  dec.f_str.resize(f.size());
  dec.f_sml.resize(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) {
    const double sign = (f[v] > 0) - (f[v] < 0);
    dec.f_str[v] = coeff * sign;
    dec.f_sml[v] = f[v] - dec.f_str[v];
  }
  dec.norm_f = norm2(f);
  dec.norm_str = norm2(dec.f_str);
  dec.norm_sml = norm2(dec.f_sml);
  return dec;
}

Decomposition decompose(const SpectralProfile& profile) { return decompose(profile.f); }

DerivedConstants DerivedConstants::from_kappa(double kappa, double xi) {
  DerivedConstants c;
  c.kappa = kappa;
  c.xi = xi;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  c.kappa_in_unit = kappa > 0.0 && kappa < 1.0;
  c.sigma_c = kappa >= 0.0 && kappa < 1.0 ? std::sqrt(kappa / (1.0 - kappa)) : nan;
  c.theta_c = kappa >= 0.0 && kappa <= 1.0 ? std::sqrt(1.0 - kappa) / std::sqrt(2.0) - std::sqrt(kappa) : nan;
  if (c.kappa_in_unit) {
    const double s = c.sigma_c;
    const double denom = 1.0 + s + kappa + 2.0 * std::sqrt(2.0) * std::sqrt(kappa);
    const double gap = 1.0 / std::sqrt(2.0) - s;
    c.delta = xi / 2.0 * (3.0 * (1.0 - kappa) / denom * gap * gap - 1.0);
  } else {
    c.delta = nan;
  }
  c.delta_fallback = !(c.delta > 0.0 && c.delta < 0.5);
  c.delta_effective = c.delta_fallback ? kDeltaFallback : c.delta;

  const double tol = 1e-9 * std::max(1.0, std::abs(kappa));
  c.kappa_le_fifth = kappa >= 0.0 && kappa <= 0.2 + tol;
  c.kappa_le_third = kappa >= 0.0 && kappa <= 1.0 / 3.0 + tol;
  c.kappa_le_1_260 = kappa >= 0.0 && kappa <= 1.0 / 260.0 + tol;
  for (double gate : {0.0, 0.2, 1.0 / 3.0, 1.0 / 260.0, 1.0})
    c.borderline = c.borderline || std::abs(kappa - gate) <= tol;
  return c;
}

DerivedConstants derived_constants(const SpectralProfile& profile, const SpectralInstance& inst, double xi) {
  if (profile.mu2 >= 1.0 - 1e-12)
    throw Error(ErrorCode::kPreconditionViolated, "second eigenvalue equals the degree; κ is undefined");
  DerivedConstants c = DerivedConstants::from_kappa((1.0 + profile.mu) / (1.0 - profile.mu2), xi);
  std::vector<char> plus(inst.n(), 0), minus(inst.n(), 0);
  for (int v : profile.supp_plus) plus[v] = 1;
  for (int v : profile.supp_minus) minus[v] = 1;
  const double internal = static_cast<double>(edge_count(inst, plus, plus) + edge_count(inst, minus, minus));
  c.beta_f = internal / (static_cast<double>(inst.d()) * inst.n());
  return c;
}

long long edge_count(const SpectralInstance& inst, const std::vector<char>& in_a, const std::vector<char>& in_b) {
  long long total = 0;
  for (const auto& rho : inst.rho())
    for (int v = 0; v < inst.n(); ++v)
      if (in_a[v] && in_b[rho[v]]) ++total;
  return total;
}

}  // namespace gapcert
