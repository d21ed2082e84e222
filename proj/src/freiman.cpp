#include "gapcert/freiman.hpp"

#include <algorithm>
#include <cmath>

#include "gapcert/error.hpp"

namespace gapcert {

CorrelationProfile CorrelationProfile::synthetic(std::vector<double> values, double norm_plus_sq) {
  CorrelationProfile corr;
  corr.values = std::move(values);
  corr.norm_plus_sq = norm_plus_sq;
  return corr;
}

CorrelationProfile correlation_profile(const SpectralProfile& profile, const GroupAction& action) {
  const int n = profile.n;
  std::vector<char> plus(n, 0);
  for (int v : profile.supp_plus) plus[v] = 1;

  CorrelationProfile corr;
  for (int v : profile.supp_plus) corr.norm_plus_sq += profile.f[v] * profile.f[v];
  corr.values.assign(action.group().order(), 0.0);
  for (int tau = 0; tau < action.group().order(); ++tau) {
    const Permutation& p = action.perm(tau);
    double sum = 0.0;
    for (int x : profile.supp_plus)
      if (plus[p[x]]) sum += profile.f[p[x]] * profile.f[x];
    corr.values[tau] = sum;
  }
  return corr;
}

DichotomyVerdict dichotomy_test(const CorrelationProfile& corr, double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw Error(ErrorCode::kPreconditionViolated, "dichotomy threshold must lie in (0, 1/2)");
  DichotomyVerdict verdict;
  verdict.delta = delta;
  const double lo = delta * corr.norm_plus_sq + kCorrelationTieTolerance;
  const double hi = (1.0 - delta) * corr.norm_plus_sq - kCorrelationTieTolerance;
  for (int tau = 0; tau < static_cast<int>(corr.values.size()); ++tau) {
    if (corr.values[tau] > lo && corr.values[tau] < hi) {
      verdict.dichotomy_holds = true;
      verdict.witness = tau;
      verdict.witness_ratio = corr.values[tau] / corr.norm_plus_sq;
      break;
    }
  }
  return verdict;
}

IndexTwoExtraction extract_index_two(const CorrelationProfile& corr, const FiniteGroup& group, double delta,
                                     const std::string& context) {
  if (static_cast<int>(corr.values.size()) != group.order())
    throw Error(ErrorCode::kPreconditionViolated, "profile length differs from group order");
  const auto verdict = dichotomy_test(corr, delta);
  if (verdict.dichotomy_holds)
    throw Error(ErrorCode::kPreconditionViolated,
                "element " + std::to_string(*verdict.witness) + " lies inside the middle interval");

  const std::string suffix = context.empty() ? std::string{} : " [" + context + "]";
  IndexTwoExtraction out;
  const double cut = (1.0 - delta) * corr.norm_plus_sq - kCorrelationTieTolerance;
  for (int tau = 0; tau < group.order(); ++tau)
    if (corr.values[tau] >= cut) out.subgroup.push_back(tau);

  out.contains_identity = std::binary_search(out.subgroup.begin(), out.subgroup.end(), group.identity());
  out.closed = out.contains_identity && is_subgroup(group, out.subgroup);
  if (!out.closed) {
    std::string detail = out.contains_identity ? "not closed under multiplication and inversion"
                                               : "does not contain the identity";
    throw Error(ErrorCode::kNotASubgroup, "high-correlation set " + detail + suffix);
  }
  out.index_two = 2 * static_cast<int>(out.subgroup.size()) == group.order();
  if (!out.index_two)
    throw Error(ErrorCode::kWrongIndex, "high-correlation subgroup has order " + std::to_string(out.subgroup.size()) +
                                            " in a group of order " + std::to_string(group.order()) + suffix);
  return out;
}

double orbit_concentration_bound(const DerivedConstants& c) {
  const double k = c.kappa;
  const double s = c.sigma_c;
  const double inner = (1.0 + s + k + 2.0 * std::sqrt(2.0) * std::sqrt(k)) / (2.0 * (1.0 - k));
  return s / std::sqrt(2.0) + std::sqrt(c.delta) / 2.0 * std::sqrt(inner);
}

OrbitConcentration orbit_concentration(const ElementSet& subgroup, const SpectralProfile& profile,
                                       const DerivedConstants& derived, const GroupAction& action) {
  if (!derived.kappa_le_1_260 || !(derived.kappa > 0.0))
    throw Error(ErrorCode::kHypothesisNotMet, "orbit concentration needs 0 < κ <= 1/260");
  if (derived.xi > 0.8) throw Error(ErrorCode::kHypothesisNotMet, "orbit concentration needs ξ <= 4/5");
  if (!(derived.delta > 0.0)) throw Error(ErrorCode::kHypothesisNotMet, "orbit concentration needs δ > 0");

  OrbitConcentration out;
  out.orbits = subgroup_orbits(subgroup, action);
  std::vector<int> orbit_of(profile.n, 0);
  for (int k = 0; k < static_cast<int>(out.orbits.size()); ++k)
    for (int v : out.orbits[k]) orbit_of[v] = k;

  int best = profile.n + 1;
  for (int k = 0; k < static_cast<int>(out.orbits.size()); ++k) {
    int outside = 0;
    for (int v : profile.supp_plus) outside += orbit_of[v] != k;
    if (outside < best) {
      best = outside;
      out.orbit = k;
    }
  }
  out.lhs = static_cast<double>(best) / profile.n;
  out.rhs = orbit_concentration_bound(derived);
  return out;
}

namespace {

// Column test: the multiset ϱ({ρ_i(v)}) equals {ρ_i(τv)} for every v.
std::optional<Left2RightFailure> check_companion(const SpectralInstance& inst, int tau, const Permutation& t,
                                                 const Permutation& rho_tau) {
  const int n = inst.n();
  std::vector<int> lhs(inst.d()), rhs(inst.d());
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < inst.d(); ++i) {
      lhs[i] = rho_tau[inst.rho()[i][v]];
      rhs[i] = inst.rho()[i][t[v]];
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs == rhs) continue;
    for (int u = 0; u < n; ++u)
      if (inst.a(u, v) != inst.a(rho_tau[u], t[v])) return Left2RightFailure{tau, u, v};
  }
  return std::nullopt;
}

std::optional<Permutation> kind_specific_companion(const SpectralInstance& inst, int g) {
  if (inst.kind() == GraphKind::kCayley || inst.kind() == GraphKind::kVertexTransitive) return std::nullopt;
  const FiniteGroup& grp = inst.action().group();
  const int sg = is_twisted(inst.kind()) ? (*inst.automorphism())[g] : g;
  Permutation p(grp.order());
  for (int u = 0; u < grp.order(); ++u) {
    switch (inst.kind()) {
      case GraphKind::kCayleySum: p[u] = grp.mul(u, grp.inv(g)); break;
      case GraphKind::kTwistedCayley: p[u] = grp.mul(sg, u); break;
      case GraphKind::kTwistedCayleySum: p[u] = grp.mul(u, grp.inv(sg)); break;
      default: break;
    }
  }
  return p;
}

}  // namespace

Left2RightResult verify_left2right(const SpectralInstance& inst,
                                   const std::optional<std::vector<Permutation>>& supplied) {
  Left2RightResult res;
  if (!inst.has_action()) return res;
  const GroupAction& act = inst.action();
  const int order = act.group().order();

  if (supplied) {
    res.candidate_available = true;
    res.source = "supplied";
    if (static_cast<int>(supplied->size()) != order)
      throw Error(ErrorCode::kPreconditionViolated, "supplied companion map needs one permutation per element");
    for (int tau = 0; tau < order; ++tau) {
      if (!is_permutation((*supplied)[tau], inst.n()))
        throw Error(ErrorCode::kInvalidPermutation, "companion for element " + std::to_string(tau) + " is not a bijection");
      if (auto fail = check_companion(inst, tau, act.perm(tau), (*supplied)[tau])) {
        res.failure = fail;
        return res;
      }
    }
    res.verified = true;
    res.map = *supplied;
    res.rho_equals_tau = res.map == act.perms();
    return res;
  }

  res.candidate_available = true;
  res.source = "translation";
  std::optional<Left2RightFailure> first_failure;
  for (int tau = 0; tau < order; ++tau) {
    if (auto fail = check_companion(inst, tau, act.perm(tau), act.perm(tau))) {
      first_failure = fail;
      break;
    }
  }
  if (!first_failure) {
    res.verified = true;
    res.rho_equals_tau = true;
    res.map = act.perms();
    return res;
  }

  if (inst.kind() == GraphKind::kCayley || inst.kind() == GraphKind::kVertexTransitive) {
    res.failure = first_failure;
    return res;
  }
  res.source = "kind-specific";
  std::vector<Permutation> map;
  map.reserve(order);
  for (int tau = 0; tau < order; ++tau) {
    Permutation p = *kind_specific_companion(inst, tau);
    if (auto fail = check_companion(inst, tau, act.perm(tau), p)) {
      res.failure = fail;
      return res;
    }
    map.push_back(std::move(p));
  }
  res.verified = true;
  res.map = std::move(map);
  res.rho_equals_tau = res.map == act.perms();
  return res;
}

}  // namespace gapcert
