#include "gapcert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gapcert/error.hpp"

namespace gapcert {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kRandomSubsets = 16;
constexpr int kMaxSubgroupsForSets = 8;

struct Part {
  std::string label;
  double lhs;
  double rhs;
  std::string lhs_exact;
  std::string rhs_exact;
};

class CheckBuilder {
 public:
  CheckBuilder(std::string id, std::string name, std::string hypothesis, double tol) : tol_(tol) {
    r_.id = std::move(id);
    r_.name = std::move(name);
    r_.hypothesis = std::move(hypothesis);
    r_.hypothesis_satisfied = true;
  }

  // First unmet requirement wins; later calls are ignored.
  CheckBuilder& gate(bool ok, const std::string& what) {
    if (!ok && r_.hypothesis_satisfied) {
      r_.hypothesis_satisfied = false;
      r_.note = "hypothesis not met: " + what;
    }
    return *this;
  }
  bool active() const { return r_.hypothesis_satisfied && !failed_; }

  void add(std::string label, double lhs, double rhs, std::string lhs_exact = {}, std::string rhs_exact = {}) {
    parts_.push_back({std::move(label), lhs, rhs, std::move(lhs_exact), std::move(rhs_exact)});
  }
  void fail(const std::string& why) {
    failed_ = true;
    r_.note = why;
  }
  void borderline(bool b) { r_.borderline = r_.borderline || b; }
  void note(const std::string& text) {
    if (r_.note.empty()) r_.note = text;
  }

  CheckResult finish() {
    if (!r_.hypothesis_satisfied) {
      r_.status = CheckStatus::kVacuous;
      r_.lhs = r_.rhs = r_.margin = kNaN;
      return r_;
    }
    if (failed_) {
      r_.status = CheckStatus::kFail;
      r_.lhs = r_.rhs = r_.margin = kNaN;
      return r_;
    }
    r_.parts = static_cast<int>(parts_.size());
    r_.status = CheckStatus::kPass;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& p : parts_) {
      const double margin = p.lhs - p.rhs;
      const double scale = std::max({1.0, std::abs(p.lhs), std::abs(p.rhs)});
      const bool finite = std::isfinite(p.lhs) && std::isfinite(p.rhs);
      const double normalized = finite ? margin / scale : -std::numeric_limits<double>::infinity();
      if (!finite || margin < -tol_ * scale) r_.status = CheckStatus::kFail;
      if (normalized < worst || r_.worst_part.empty()) {
        worst = normalized;
        r_.lhs = p.lhs;
        r_.rhs = p.rhs;
        r_.margin = margin;
        r_.lhs_exact = p.lhs_exact;
        r_.rhs_exact = p.rhs_exact;
        r_.worst_part = p.label;
      }
    }
    if (parts_.empty()) r_.lhs = r_.rhs = r_.margin = kNaN;
    return r_;
  }

 private:
  CheckResult r_;
  std::vector<Part> parts_;
  double tol_;
  bool failed_ = false;
};

bool near(double x, double gate) { return std::abs(x - gate) <= 1e-9 * std::max(1.0, std::abs(gate)); }

std::uint64_t instance_hash(const SpectralInstance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(inst.n()));
  for (const auto& rho : inst.rho())
    for (int x : rho) mix(static_cast<std::uint64_t>(x));
  return h;
}

std::vector<std::vector<int>> random_subsets(const SpectralInstance& inst) {
  std::mt19937_64 rng(instance_hash(inst));
  std::vector<std::vector<int>> sets(kRandomSubsets);
  for (auto& s : sets) {
    std::uint64_t bits = 0;
    for (int v = 0; v < inst.n(); ++v) {
      if (v % 64 == 0) bits = rng();
      if ((bits >> (v % 64)) & 1) s.push_back(v);
    }
  }
  return sets;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string join_ids(const std::vector<CheckResult>& checks, CheckStatus status) {
  std::string out;
  for (const auto& c : checks)
    if (c.status == status) out += (out.empty() ? "" : ",") + c.id;
  return out.empty() ? "none" : out;
}

}  // namespace

std::string_view check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

int CertificateReport::failed_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckResult& c) { return c.status == CheckStatus::kFail; }));
}

int CertificateReport::vacuous_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckResult& c) { return c.status == CheckStatus::kVacuous; }));
}

CertificateReport certify_instance(const SpectralInstance& inst, const CertifyOptions& opt) {
  const ValidationRecord flags = validate_instance(inst);
  if (!flags.valid()) throw Error(ErrorCode::kValidationRejected, flags.rejection_reason());
  const GroupAction& act = inst.action();
  const FiniteGroup& grp = act.group();
  const double tol = opt.tolerance;

  CertificateReport rep;
  rep.instance = inst.name();
  rep.kind = std::string(graph_kind_name(inst.kind()));
  rep.n = inst.n();
  rep.d = inst.d();
  rep.group_order = grp.order();
  const int n = inst.n();
  const double d = inst.d();

  // Spectrum and conditioned eigenfunction.
  std::optional<SpectralProfile> profile;
  std::string profile_error;
  try {
    profile = bottom_eigenfunction(inst, ConditioningPolicy::kReport);
    rep.mu = profile->mu;
    rep.mu2 = profile->mu2;
  } catch (const Error& e) {
    profile_error = std::string(error_code_name(e.code())) + ": " + e.what();
    const Spectrum spec = spectrum(inst);
    rep.mu = spec.mu;
    rep.mu2 = spec.mu2;
  }
  const double mu = rep.mu, mu2 = rep.mu2;
  const double lower_gap = 1.0 + mu, upper_gap = 1.0 - mu2;
  rep.kappa = lower_gap / upper_gap;

  // Group-theoretic data.
  const NuResult nu = nu_constant(inst);
  rep.nu = nu.nu;
  rep.index_two_subgroups = static_cast<int>(nu.subgroups.size());
  std::vector<std::vector<std::vector<int>>> subgroup_orbit_sets;
  for (const auto& h : nu.subgroups) {
    auto orbits = subgroup_orbits(h, act);
    if (orbits.size() == 1) rep.no_transitive_index_two = false;
    subgroup_orbit_sets.push_back(std::move(orbits));
  }
  const bool cond51 = rep.no_transitive_index_two;
  const std::optional<bool> simple = is_simple(grp);
  rep.group_simple_or_odd = grp.order() % 2 == 1 || simple.value_or(opt.assume_simple);

  const bool nu_is_one = nu.nu == 1.0;
  const double default_xi = nu_is_one ? 0.8 : 0.123;
  const double xi = opt.xi.value_or(default_xi);

  if (profile) {
    rep.derived = derived_constants(*profile, inst, xi);
    rep.bottom_multiplicity = profile->bottom_multiplicity;
    rep.supp_plus = static_cast<int>(profile->supp_plus.size());
    rep.supp_minus = static_cast<int>(profile->supp_minus.size());
    rep.residual = profile->residual;
    rep.eigen_conditions = profile->eigen_conditions();
    rep.conditioning_note = profile->conditioning_note;
  } else {
    rep.derived = DerivedConstants::from_kappa(rep.kappa, xi);
    rep.conditioning_note = profile_error;
  }
  const DerivedConstants& c = rep.derived;
  const double kappa = c.kappa;
  const bool cond22 = rep.eigen_conditions;
  const std::string cond22_text = profile ? "eigenfunction conditions (f ⟂ 1, nowhere zero, |supp f₊| ≥ |supp f₋|, 0 < κ < 1)"
                                          : "eigenfunction available (" + profile_error + ")";

  // Exact constants.
  auto exact = [&](ExactConstant& slot, auto&& fn) {
    try {
      slot.value = fn();
    } catch (const Error& e) {
      slot.unavailable_reason = e.what();
    }
  };
  exact(rep.edge_cheeger, [&] { return edge_cheeger_exact(inst, opt.max_exact_cheeger); });
  exact(rep.vertex_cheeger, [&] { return vertex_cheeger_exact(inst, opt.max_exact_cheeger); });
  exact(rep.edge_bipartiteness, [&] { return edge_bipartiteness_exact(inst, opt.max_exact_bipartiteness); });

  // Companion maps and correlations.
  const Left2RightResult l2r = verify_left2right(inst, opt.left2right);
  rep.left2right_verified = l2r.verified;
  rep.left2right_source = l2r.verified ? l2r.source : (l2r.candidate_available ? "unverified" : "no candidate");

  std::optional<CorrelationProfile> corr;
  if (profile && profile->nowhere_zero) corr = correlation_profile(*profile, act);
  // Dichotomy test with the default ξ; δ falls back when the closed form
  // leaves (0, 1/2).
  const DerivedConstants default_c = DerivedConstants::from_kappa(kappa, default_xi);
  std::optional<DichotomyVerdict> verdict_default;
  if (corr) {
    verdict_default = dichotomy_test(*corr, default_c.delta_effective);
    rep.dichotomy_holds = verdict_default->dichotomy_holds;
    rep.dichotomy_witness = verdict_default->witness;
    rep.dichotomy_ratio = verdict_default->witness_ratio;
  }
  const bool delta_formula_ok = c.delta > 0.0 && c.delta < 0.5;
  std::optional<DichotomyVerdict> verdict_formula;
  if (corr && delta_formula_ok) verdict_formula = dichotomy_test(*corr, c.delta);

  // Sets used by the ℓ¹ and Σ checks.
  std::vector<std::pair<std::string, std::vector<int>>> sets;
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  for (int k = 0; k < static_cast<int>(subgroup_orbit_sets.size()) && k < kMaxSubgroupsForSets; ++k)
    for (int o = 0; o < static_cast<int>(subgroup_orbit_sets[k].size()); ++o)
      sets.emplace_back("index-two subgroup " + std::to_string(k) + " orbit " + std::to_string(o),
                        subgroup_orbit_sets[k][o]);
  const auto randoms = random_subsets(inst);
  for (int k = 0; k < kRandomSubsets; ++k) sets.emplace_back("random set " + std::to_string(k), randoms[k]);

  auto& checks = rep.checks;

  {  // C1
    CheckBuilder b("C1", "main lower-gap bound", "valid instance", tol);
    b.add("1+mu >= (1-mu2)/(50000 d)", lower_gap, upper_gap / (50000.0 * d));
    checks.push_back(b.finish());
  }
  {  // C2
    CheckBuilder b("C2", "odd-order or simple group bound", "group of odd order or simple", tol);
    std::string why = "group order " + std::to_string(grp.order()) + " is even and ";
    why += simple ? "the group is not simple" : "simplicity was not asserted (order above brute-force cap)";
    b.gate(rep.group_simple_or_odd, why);
    if (b.active()) b.add("1+mu >= (1-mu2)/2525", lower_gap, upper_gap / 2525.0);
    checks.push_back(b.finish());
  }
  {  // C3
    CheckBuilder b("C3", "vertex Cheeger bound", "vertex Cheeger constant computed exactly", tol);
    b.gate(rep.vertex_cheeger.value.has_value(), rep.vertex_cheeger.unavailable_reason);
    if (b.active()) {
      const double h = rep.vertex_cheeger.value->to_double();
      const std::string hs = rep.vertex_cheeger.value->str();
      b.add("1+mu >= h^2/(350000 d^2)", lower_gap, h * h / (350000.0 * d * d), {}, "h=" + hs);
      if (rep.group_simple_or_odd) b.add("1+mu >= h^2/17675", lower_gap, h * h / 17675.0, {}, "h=" + hs);
    }
    checks.push_back(b.finish());
  }
  const std::optional<Rational>& beta_edge = rep.edge_bipartiteness.value;
  {  // C4
    CheckBuilder b("C4", "dual Cheeger sandwich", "edge bipartiteness constant computed exactly", tol);
    b.gate(beta_edge.has_value(), rep.edge_bipartiteness.unavailable_reason);
    if (b.active()) {
      const double be = beta_edge->to_double();
      const Rational twice(2 * beta_edge->num(), beta_edge->den());
      b.add("2 beta_edge >= 1+mu", 2.0 * be, lower_gap, twice.str());
      b.add("1+mu >= beta_edge^2/2", lower_gap, be * be / 2.0);
    }
    checks.push_back(b.finish());
  }
  {  // C5
    CheckBuilder b("C5", "edge bipartiteness upper bound", "0 < kappa < 1 and exact edge bipartiteness", tol);
    b.gate(c.kappa_in_unit, "kappa = " + fmt(kappa) + " outside (0, 1)");
    b.gate(beta_edge.has_value(), rep.edge_bipartiteness.unavailable_reason);
    b.borderline(near(kappa, 1.0));
    if (b.active()) {
      const double be = beta_edge->to_double();
      b.add("(1+mu)/(2(1-kappa)) >= beta_edge", lower_gap / (2.0 * (1.0 - kappa)), be, {}, beta_edge->str());
      b.add("kappa >= beta_edge/2", kappa, be / 2.0);
    }
    checks.push_back(b.finish());
  }

  std::optional<Decomposition> dec;
  if (profile) dec = decompose(*profile);
  const double norm_f = dec ? dec->norm_f : 0.0;
  const double norm_str = dec ? dec->norm_str : 0.0;
  const double sig = c.sigma_c;

  {  // C6
    CheckBuilder b("C6", "structured/small decomposition", cond22_text, tol);
    b.gate(cond22, cond22_text);
    b.borderline(near(kappa, 1.0));
    if (b.active()) {
      b.add("sqrt(kappa)|f| >= |f_sml|", std::sqrt(kappa) * norm_f, dec->norm_sml);
      b.add("|f_str| >= sqrt(1-kappa)|f|", norm_str, std::sqrt(1.0 - kappa) * norm_f);
      b.add("sigma |f_str| >= |f_sml|", sig * norm_str, dec->norm_sml);
    }
    checks.push_back(b.finish());
  }
  {  // C7
    CheckBuilder b("C7", "kappa versus bipartiteness of f", cond22_text, tol);
    b.gate(cond22, cond22_text);
    b.borderline(near(kappa, 1.0));
    if (b.active()) {
      const double beta = c.beta_f;
      b.add("2 beta >= 1+mu", 2.0 * beta, lower_gap);
      b.add("(1+mu+(1-mu)sigma^2)/2 >= beta", (lower_gap + (1.0 - mu) * sig * sig) / 2.0, beta);
      b.add("(1-mu2)kappa/(2(1-kappa)) >= beta", upper_gap * kappa / (2.0 * (1.0 - kappa)), beta);
      b.add("kappa/(1-kappa) >= beta", kappa / (1.0 - kappa), beta);
      const double r1 = 2.0 * beta / (upper_gap + 2.0 * beta);
      b.add("kappa >= 2beta/(1-mu2+2beta)", kappa, r1);
      b.add("2beta/(1-mu2+2beta) >= beta/(1+beta)", r1, beta / (1.0 + beta));
      b.add("beta/(1+beta) >= beta/2", beta / (1.0 + beta), beta / 2.0);
      if (2.0 * d * beta >= 1.0 - tol) {
        b.add("kappa >= 1/(d(1-mu2)+1)", kappa, 1.0 / (d * upper_gap + 1.0));
        b.add("1/(d(1-mu2)+1) >= 1/(2d+1)", 1.0 / (d * upper_gap + 1.0), 1.0 / (2.0 * d + 1.0));
      }
    }
    checks.push_back(b.finish());
  }
  {  // C8
    CheckBuilder b("C8", "l1 bounds on supp(f+) ∩ X", cond22_text, tol);
    b.gate(cond22, cond22_text);
    if (b.active()) {
      std::vector<char> plus(n, 0);
      for (int v : profile->supp_plus) plus[v] = 1;
      std::vector<std::pair<std::string, const std::vector<int>*>> xs;
      xs.emplace_back("V", &all);
      for (const auto& [label, s] : sets) xs.emplace_back(label, &s);
      const double rn = std::sqrt(static_cast<double>(n));
      for (const auto& [label, x] : xs) {
        double sml = 0.0, sum_f = 0.0;
        int m = 0;
        for (int v : *x) {
          if (!plus[v]) continue;
          ++m;
          sml += std::abs(dec->f_sml[v]);
          sum_f += profile->f[v];
        }
        const double rm = std::sqrt(static_cast<double>(m));
        b.add("sml l1 bound, X = " + label, sig * rm / rn * norm_str, sml / rn);
        b.add("f l1 lower bound, X = " + label, std::abs(sum_f) / rn,
              norm_str * m / n - sig * norm_str * rm / rn);
      }
    }
    checks.push_back(b.finish());
  }
  {  // C9
    CheckBuilder b("C9", "support and norm bounds for kappa <= 1/5", cond22_text + ", kappa <= 1/5", tol);
    b.gate(cond22, cond22_text);
    b.gate(c.kappa_le_fifth, "kappa = " + fmt(kappa) + " > 1/5");
    b.borderline(near(kappa, 0.2));
    if (b.active()) {
      const double sp = rep.supp_plus, sm = rep.supp_minus;
      double plus_sq = 0.0;
      for (int v : profile->supp_plus) plus_sq += profile->f[v] * profile->f[v];
      b.add("(1+sigma)n/2 >= |supp f+|", (1.0 + sig) / 2.0 * n, sp);
      b.add("|supp f-| >= (1-sigma)n/2", sm, (1.0 - sig) / 2.0 * n);
      b.add("|supp f-| >= (1-sigma)/(1+sigma)|supp f+|", sm, (1.0 - sig) / (1.0 + sig) * sp);
      b.add("(1+sigma+kappa+2sqrt2 sqrt kappa)/2 |f|^2 >= |f+|^2",
            (1.0 + sig + kappa + 2.0 * std::sqrt(2.0) * std::sqrt(kappa)) / 2.0 * norm_f * norm_f, plus_sq);
    }
    checks.push_back(b.finish());
  }
  {  // C10
    CheckBuilder b("C10", "positive-part norm bounds for kappa <= 1/3", cond22_text + ", kappa <= 1/3", tol);
    b.gate(cond22, cond22_text);
    b.gate(c.kappa_le_third, "kappa = " + fmt(kappa) + " > 1/3");
    b.borderline(near(kappa, 1.0 / 3.0));
    if (b.active()) {
      double plus_sq = 0.0, minus_sq = 0.0;
      for (int v : profile->supp_plus) plus_sq += profile->f[v] * profile->f[v];
      for (int v : profile->supp_minus) minus_sq += profile->f[v] * profile->f[v];
      const double th = c.theta_c;
      const double np = std::sqrt(plus_sq), nm = std::sqrt(minus_sq);
      b.add("|f+| >= theta |f|", np, th * norm_f);
      b.add("sqrt(1-theta^2)|f| >= |f-|", std::sqrt(1.0 - th * th) * norm_f, nm);
      if (th > 1e-12)
        b.add("sqrt(theta^-2 - 1)|f+| >= sqrt(1-theta^2)|f|", std::sqrt(1.0 / (th * th) - 1.0) * np,
              std::sqrt(1.0 - th * th) * norm_f);
      else
        b.note("theta = 0, the theta^-2 bound is omitted");
    }
    checks.push_back(b.finish());
  }
  {  // C11
    CheckBuilder b("C11", "translate correlation bounds", cond22_text, tol);
    b.gate(cond22, cond22_text);
    b.gate(corr.has_value(), "correlation profile unavailable");
    if (b.active()) {
      const double f2 = norm_f * norm_f;
      std::vector<char> plus(n, 0);
      for (int v : profile->supp_plus) plus[v] = 1;
      for (int tau = 0; tau < grp.order(); ++tau) {
        const Permutation& p = act.perm(tau);
        int overlap = 0;
        for (int x : profile->supp_plus) overlap += plus[p[x]];
        const double frac = static_cast<double>(overlap) / n;
        const double cv = corr->values[tau];
        const double root = 2.0 * std::sqrt(frac) * std::sqrt(kappa);
        const std::string t = std::to_string(tau);
        b.add("str correlation, tau = " + t, (root + kappa) * f2, std::abs(cv - frac * norm_str * norm_str));
        b.add("full correlation, tau = " + t, (frac * kappa + root + kappa) * f2, std::abs(cv - frac * f2));
      }
    }
    checks.push_back(b.finish());
  }
  {  // C12
    CheckBuilder b("C12", "overlap difference bound", "any permutation and subsets", tol);
    std::vector<std::pair<std::string, std::vector<int>>> pool;
    if (profile) pool.emplace_back("supp f+", profile->supp_plus);
    pool.insert(pool.end(), sets.begin(), sets.end());
    const int m = static_cast<int>(pool.size());
    std::vector<std::vector<char>> mask(m, std::vector<char>(n, 0));
    for (int k = 0; k < m; ++k)
      for (int v : pool[k].second) mask[k][v] = 1;
    std::vector<double> sym_bound(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int bb = a + 1; bb < m; ++bb) {
        int diff = 0;
        for (int v = 0; v < n; ++v) diff += mask[a][v] != mask[bb][v];
        sym_bound[a * m + bb] = std::sqrt(2.0) * std::sqrt(static_cast<double>(diff) / n);
      }
    // One part per (π, A, B) is too many to list; keep the tightest per π.
    for (int tau = 0; tau < grp.order(); ++tau) {
      const Permutation inv = inverse(act.perm(tau));
      std::vector<double> sig_vals(m);
      for (int k = 0; k < m; ++k) {
        int agree = 0;
        for (int v = 0; v < n; ++v) agree += mask[k][v] == mask[k][inv[v]];
        sig_vals[k] = static_cast<double>(agree) / n;
      }
      double best_norm = std::numeric_limits<double>::infinity();
      double best_l = 0, best_r = 0;
      std::string best_label;
      for (int a = 0; a < m; ++a)
        for (int bb = a + 1; bb < m; ++bb) {
          const double l = sym_bound[a * m + bb], r = std::abs(sig_vals[a] - sig_vals[bb]);
          const double nm = (l - r) / std::max({1.0, l, r});
          if (nm < best_norm) {
            best_norm = nm;
            best_l = l;
            best_r = r;
            best_label = pool[a].first + " vs " + pool[bb].first;
          }
        }
      if (m >= 2) b.add("tau = " + std::to_string(tau) + ": " + best_label, best_l, best_r);
    }
    checks.push_back(b.finish());
  }

  const bool kappa_small = kappa > 0.0 && c.kappa_le_1_260;
  const std::string no_dich_text = "no element inside the middle correlation interval at the closed-form delta";
  bool extraction_ok = false;
  {  // C13
    CheckBuilder b("C13", "index-two extraction and orbit concentration",
                   "0 < kappa <= 1/260, xi <= 4/5, no transitive index-two subgroup, " + cond22_text + ", " +
                       no_dich_text,
                   tol);
    b.gate(kappa_small, "kappa = " + fmt(kappa) + " > 1/260");
    b.gate(xi <= 0.8 + 1e-12, "xi = " + fmt(xi) + " > 4/5");
    b.gate(cond51, "an index-two subgroup acts transitively");
    b.gate(cond22, cond22_text);
    b.gate(delta_formula_ok, "closed-form delta = " + fmt(c.delta) + " outside (0, 1/2)");
    b.gate(verdict_formula && !verdict_formula->dichotomy_holds, "dichotomy witness present");
    b.borderline(near(kappa, 1.0 / 260.0));
    if (b.active()) {
      const std::string context = "kappa = " + fmt(kappa) + ", xi = " + fmt(xi) + ", delta = " + fmt(c.delta);
      try {
        const auto ext = extract_index_two(*corr, grp, c.delta, context);
        rep.extracted_subgroup = ext.subgroup;
        const auto conc = orbit_concentration(ext.subgroup, *profile, c, act);
        b.add("orbit concentration bound >= |supp f+ ∩ O^c|/n", conc.rhs, conc.lhs);
        extraction_ok = true;
      } catch (const Error& e) {
        b.fail(std::string(error_code_name(e.code())) + ": " + e.what());
      }
    }
    checks.push_back(b.finish());
  }
  {  // C14
    CheckBuilder b("C14", "lower gap without dichotomy",
                   "as C13, with nu = 1 and xi <= 4/5, or nu >= 1/2 and xi <= 123/1000", tol);
    b.gate(kappa_small, "kappa = " + fmt(kappa) + " > 1/260");
    b.gate(cond51, "an index-two subgroup acts transitively");
    b.gate(cond22, cond22_text);
    b.gate(delta_formula_ok, "closed-form delta = " + fmt(c.delta) + " outside (0, 1/2)");
    b.gate(verdict_formula && !verdict_formula->dichotomy_holds, "dichotomy witness present");
    const bool branch_one = nu_is_one && xi <= 0.8 + 1e-12;
    const bool branch_half = nu.nu >= 0.5 && xi <= 0.123 + 1e-12;
    b.gate(branch_one || branch_half, "nu = " + fmt(nu.nu) + " and xi = " + fmt(xi) + " match no branch");
    b.borderline(near(kappa, 1.0 / 260.0));
    if (b.active()) {
      const double beta = c.beta_f;
      b.add("kappa >= beta/2", kappa, beta / 2.0);
      if (branch_one) b.add("beta/2 >= 1/(10d)", beta / 2.0, 1.0 / (10.0 * d));
      if (branch_half) b.add("beta/2 >= 1/(50000d)", beta / 2.0, 1.0 / (50000.0 * d));
      if (!extraction_ok) b.note("index-two extraction did not succeed, see C13");
    }
    checks.push_back(b.finish());
  }
  {  // C15
    CheckBuilder b("C15", "lower gap with dichotomy",
                   "companion maps verified, " + cond22_text + ", nu >= 1/2, dichotomy witness at default xi", tol);
    b.gate(cond22, cond22_text);
    b.gate(cond51, "an index-two subgroup acts transitively");
    b.gate(l2r.verified, "companion maps " + rep.left2right_source);
    b.gate(nu.nu >= 0.5, "nu = " + fmt(nu.nu) + " < 1/2");
    b.gate(verdict_default && verdict_default->dichotomy_holds, "no dichotomy witness");
    b.borderline(near(nu.nu, 0.5));
    if (b.active()) {
      if (nu_is_one) b.add("1+mu >= (1-mu2)/2521", lower_gap, upper_gap / 2521.0);
      b.add("1+mu >= (1-mu2)/54632", lower_gap, upper_gap / 54632.0);
      if (default_c.delta_fallback) b.note("closed-form delta outside (0, 1/2); tested with delta = 0.1");
    }
    checks.push_back(b.finish());
  }

  rep.overall = rep.failed_count() == 0;
  std::ostringstream hs;
  hs << "hypotheses: kappa=" << fmt(kappa) << " eigenfunction=" << (cond22 ? "ok" : "unmet")
     << " kappa<=1/5:" << (c.kappa_le_fifth ? "yes" : "no") << " kappa<=1/3:" << (c.kappa_le_third ? "yes" : "no")
     << " kappa<=1/260:" << (kappa_small ? "yes" : "no") << " nu=" << fmt(nu.nu) << " xi=" << fmt(xi)
     << " companion=" << rep.left2right_source << " dichotomy=";
  if (rep.dichotomy_witness)
    hs << "yes(tau=" << *rep.dichotomy_witness << ")";
  else
    hs << (corr ? "no" : "n/a");
  hs << " vacuous=" << join_ids(checks, CheckStatus::kVacuous) << " failed=" << join_ids(checks, CheckStatus::kFail);
  rep.hypothesis_summary = hs.str();
  return rep;
}

namespace {

ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson exact_json(const ExactConstant& c) {
  if (!c.value) return ojson{{"exact", nullptr}, {"value", nullptr}, {"reason", c.unavailable_reason}};
  return ojson{{"exact", c.value->str()}, {"value", c.value->to_double()}};
}

std::string csv_number(double x) { return std::isfinite(x) ? ojson(x).dump() : std::string{}; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string serialize_report(const CertificateReport& r, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "instance,id,name,hypothesis_satisfied,lhs,rhs,margin,status,borderline,worst_part,note\n";
    for (const auto& ch : r.checks) {
      out += csv_field(r.instance) + "," + ch.id + "," + csv_field(ch.name) + "," +
             (ch.hypothesis_satisfied ? "true" : "false") + "," + csv_number(ch.lhs) + "," + csv_number(ch.rhs) +
             "," + csv_number(ch.margin) + "," + std::string(check_status_name(ch.status)) + "," +
             (ch.borderline ? "true" : "false") + "," + csv_field(ch.worst_part) + "," + csv_field(ch.note) + "\n";
    }
    return out;
  }

  ojson j;
  j["instance"] = r.instance;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["d"] = r.d;
  j["group_order"] = r.group_order;
  j["mu"] = number(r.mu);
  j["mu2"] = number(r.mu2);
  j["kappa"] = number(r.kappa);
  j["eigenfunction"] = {{"bottom_multiplicity", r.bottom_multiplicity},
                        {"supp_plus", r.supp_plus},
                        {"supp_minus", r.supp_minus},
                        {"residual", number(r.residual)},
                        {"conditions_hold", r.eigen_conditions},
                        {"note", r.conditioning_note}};
  const DerivedConstants& c = r.derived;
  j["derived"] = {{"sigma", number(c.sigma_c)},          {"theta", number(c.theta_c)},
                  {"xi", number(c.xi)},                  {"delta", number(c.delta)},
                  {"delta_effective", number(c.delta_effective)}, {"delta_fallback", c.delta_fallback},
                  {"beta_f", number(c.beta_f)},          {"borderline", c.borderline}};
  j["constants"] = {{"edge_cheeger", exact_json(r.edge_cheeger)},
                    {"vertex_cheeger", exact_json(r.vertex_cheeger)},
                    {"edge_bipartiteness", exact_json(r.edge_bipartiteness)},
                    {"nu", number(r.nu)},
                    {"index_two_subgroups", r.index_two_subgroups},
                    {"no_transitive_index_two", r.no_transitive_index_two},
                    {"group_simple_or_odd", r.group_simple_or_odd}};
  ojson fr;
  fr["left2right_verified"] = r.left2right_verified;
  fr["left2right_source"] = r.left2right_source;
  fr["dichotomy_holds"] = r.dichotomy_holds;
  fr["witness"] = r.dichotomy_witness ? ojson(*r.dichotomy_witness) : ojson(nullptr);
  fr["witness_ratio"] = r.dichotomy_witness ? number(r.dichotomy_ratio) : ojson(nullptr);
  fr["subgroup"] = r.extracted_subgroup ? ojson(*r.extracted_subgroup) : ojson(nullptr);
  j["freiman"] = fr;
  j["hypothesis_summary"] = r.hypothesis_summary;
  ojson checks = ojson::array();
  for (const auto& ch : r.checks) {
    ojson cj;
    cj["id"] = ch.id;
    cj["name"] = ch.name;
    cj["hypothesis_satisfied"] = ch.hypothesis_satisfied;
    cj["hypothesis"] = ch.hypothesis;
    cj["lhs"] = number(ch.lhs);
    cj["rhs"] = number(ch.rhs);
    cj["margin"] = number(ch.margin);
    if (!ch.lhs_exact.empty()) cj["lhs_exact"] = ch.lhs_exact;
    if (!ch.rhs_exact.empty()) cj["rhs_exact"] = ch.rhs_exact;
    cj["worst_part"] = ch.worst_part;
    cj["parts"] = ch.parts;
    cj["status"] = check_status_name(ch.status);
    cj["borderline"] = ch.borderline;
    cj["note"] = ch.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["overall"] = r.overall ? "pass" : "fail";
  return j.dump(2) + "\n";
}

// Family enumeration -------------------------------------------------------

namespace {

std::string set_text(const std::vector<int>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

// Inverse classes {g, g⁻¹} without the identity, by smallest element.
std::vector<std::vector<int>> inverse_classes(const FiniteGroup& g) {
  std::vector<std::vector<int>> classes;
  std::vector<char> seen(g.order(), 0);
  for (int x = 0; x < g.order(); ++x) {
    if (x == g.identity() || seen[x]) continue;
    const int y = g.inv(x);
    seen[x] = seen[y] = 1;
    classes.push_back(x == y ? std::vector<int>{x} : std::vector<int>{x, y});
  }
  return classes;
}

void enumerate_symmetric(const std::vector<std::vector<int>>& classes, std::size_t start, int budget,
                         std::vector<int>& current, std::vector<std::vector<int>>& out, std::size_t cap) {
  for (std::size_t k = start; k < classes.size(); ++k) {
    const int sz = static_cast<int>(classes[k].size());
    if (sz > budget) continue;
    current.insert(current.end(), classes[k].begin(), classes[k].end());
    auto sorted = current;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    if (out.size() > cap) return;
    enumerate_symmetric(classes, k + 1, budget - sz, current, out, cap);
    current.resize(current.size() - sz);
    if (out.size() > cap) return;
  }
}

void enumerate_subsets(int order, int start, int budget, std::vector<int>& current,
                       std::vector<std::vector<int>>& out, std::size_t cap) {
  for (int x = start; x < order && budget > 0; ++x) {
    current.push_back(x);
    out.push_back(current);
    if (out.size() > cap) return;
    enumerate_subsets(order, x + 1, budget - 1, current, out, cap);
    current.pop_back();
    if (out.size() > cap) return;
  }
}

GroupPtr family_group(GroupFamily family, int n) {
  switch (family) {
    case GroupFamily::kCyclic: return cyclic_group(n);
    case GroupFamily::kDihedral: return dihedral_group(n);
    case GroupFamily::kSymmetric: return symmetric_group(n);
    case GroupFamily::kQuaternion8: return quaternion8_group();
    case GroupFamily::kDirectProduct: break;
  }
  throw Error(ErrorCode::kUnsupportedParameter, "direct_product is not available as a scan family");
}

std::string family_text(GroupFamily family, int n) {
  if (family == GroupFamily::kQuaternion8) return "quaternion8";
  return std::string(group_family_name(family)) + "(" + std::to_string(n) + ")";
}

}  // namespace

std::vector<FamilyMember> enumerate_family(const FamilySpec& spec) {
  if (spec.n_step < 1) throw Error(ErrorCode::kUnsupportedParameter, "n_range step must be positive");
  if (spec.degree_max < 1) throw Error(ErrorCode::kUnsupportedParameter, "degree_max must be positive");
  if (spec.kind == GraphKind::kVertexTransitive)
    throw Error(ErrorCode::kUnsupportedParameter, "scans cover the four group-based kinds only");
  const std::size_t cap = static_cast<std::size_t>(std::max(0, spec.max_instances));
  std::vector<FamilyMember> members;

  std::vector<int> ns;
  if (spec.family == GroupFamily::kQuaternion8) {
    if (spec.n_min <= spec.n_max) ns.push_back(8);
  } else {
    for (int n = spec.n_min; n <= spec.n_max; n += spec.n_step) ns.push_back(n);
  }

  for (int n : ns) {
    const GroupPtr g = family_group(spec.family, n);
    const std::string gtext = family_text(spec.family, n);

    std::vector<std::pair<std::string, std::optional<Permutation>>> sigmas;
    if (!is_twisted(spec.kind)) {
      sigmas.emplace_back("", std::nullopt);
    } else {
      switch (spec.automorphism_policy) {
        case AutomorphismPolicy::kIdentity: sigmas.emplace_back(" sigma=id", identity_permutation(g->order())); break;
        case AutomorphismPolicy::kInversion: {
          Permutation p(g->order());
          for (int x = 0; x < g->order(); ++x) p[x] = g->inv(x);
          sigmas.emplace_back(" sigma=inv", p);
          break;
        }
        case AutomorphismPolicy::kUnits: {
          if (spec.family != GroupFamily::kCyclic)
            throw Error(ErrorCode::kUnsupportedParameter, "automorphism_policy units needs the cyclic family");
          for (int k = 1; k < std::max(2, n); ++k) {
            if (std::gcd(k, n) != 1) continue;
            Permutation p(n);
            for (int x = 0; x < n; ++x) p[x] = static_cast<int>((static_cast<long long>(k) * x) % n);
            sigmas.emplace_back(" sigma=x*" + std::to_string(k), p);
          }
          break;
        }
        case AutomorphismPolicy::kExplicit:
          for (const auto& p : spec.automorphisms) {
            if (static_cast<int>(p.size()) != g->order()) continue;
            sigmas.emplace_back(" sigma=" + set_text(p), p);
          }
          break;
      }
    }

    std::vector<std::vector<int>> sets;
    std::vector<int> current;
    switch (spec.connection_policy) {
      case ConnectionPolicy::kAllSymmetric:
        enumerate_symmetric(inverse_classes(*g), 0, spec.degree_max, current, sets, cap);
        break;
      case ConnectionPolicy::kAllSubsets:
        enumerate_subsets(g->order(), 0, spec.degree_max, current, sets, cap);
        break;
      case ConnectionPolicy::kExplicit:
        for (const auto& s : spec.connection_sets) {
          const bool fits = std::all_of(s.begin(), s.end(), [&](int x) { return g->is_element(x); });
          if (fits && static_cast<int>(s.size()) <= spec.degree_max) sets.push_back(s);
        }
        break;
    }

    for (const auto& [stext, sigma] : sigmas) {
      for (const auto& s : sets) {
        if (members.size() >= cap)
          throw Error(ErrorCode::kUnsupportedParameter,
                      "family exceeds max_instances = " + std::to_string(spec.max_instances));
        FamilyMember m;
        m.descriptor = std::string(graph_kind_name(spec.kind)) + " " + gtext + " S=" + set_text(s) + stext;
        try {
          if (sigma && !verify_automorphism(*g, *sigma)) {
            m.skip_reason = "map is not an automorphism";
          } else {
            SpectralInstance inst = build_instance(spec.kind, g, s, sigma);
            inst.set_name(m.descriptor);
            m.instance.emplace(std::move(inst));
          }
        } catch (const Error& e) {
          m.skip_reason = e.code() == ErrorCode::kNotUndirected ? "directed" : e.what();
        }
        members.push_back(std::move(m));
      }
    }
  }
  return members;
}

ScanResult scan_family(const FamilySpec& spec, const CertifyOptions& options, int workers) {
  std::vector<FamilyMember> members = enumerate_family(spec);
  ScanResult result;
  result.rows.resize(members.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < members.size(); i = next++) {
      ScanRow& row = result.rows[i];
      const FamilyMember& m = members[i];
      row.instance = m.descriptor;
      if (!m.instance) {
        row.reason = m.skip_reason;
        continue;
      }
      const SpectralInstance& inst = *m.instance;
      row.n = inst.n();
      row.d = inst.d();
      const ValidationRecord flags = validate_instance(inst);
      if (!flags.valid()) {
        row.reason = flags.rejection_reason();
        continue;
      }
      try {
        const CertificateReport rep = certify_instance(inst, options);
        row.status = ScanRowStatus::kCertified;
        row.mu = rep.mu;
        row.mu2 = rep.mu2;
        row.kappa = rep.kappa;
        row.c1_ratio = (1.0 + rep.mu) * 50000.0 * rep.d / (1.0 - rep.mu2);
        row.failed = rep.failed_count();
        if (row.failed > 0) row.failed_ids = join_ids(rep.checks, CheckStatus::kFail);
        row.vacuous = rep.vacuous_count();
        row.overall = rep.overall;
      } catch (const Error& e) {
        row.reason = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  };
  const int count = std::max(1, workers);
  if (count == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ScanSummary& s = result.summary;
  s.instances = static_cast<int>(result.rows.size());
  for (const auto& row : result.rows) {
    if (row.status == ScanRowStatus::kSkipped) {
      ++s.skipped;
      continue;
    }
    ++s.certified;
    if (!row.overall) ++s.failed_instances;
    if (!s.min_c1_ratio || row.c1_ratio < *s.min_c1_ratio) {
      s.min_c1_ratio = row.c1_ratio;
      s.argmin_instance = row.instance;
    }
  }
  return result;
}

std::string serialize_scan(const ScanResult& scan, ReportFormat format) {
  const ScanSummary& s = scan.summary;
  if (format == ReportFormat::kCsv) {
    std::string out = "row,instance,status,reason,n,d,mu,mu2,kappa,c1_ratio,failed_checks,failed_ids,vacuous_checks,overall\n";
    int idx = 0;
    for (const auto& r : scan.rows) {
      const bool cert = r.status == ScanRowStatus::kCertified;
      out += std::to_string(idx++) + "," + csv_field(r.instance) + "," + (cert ? "certified" : "skipped") + "," +
             csv_field(r.reason) + "," + std::to_string(r.n) + "," + std::to_string(r.d) + "," +
             (cert ? csv_number(r.mu) : "") + "," + (cert ? csv_number(r.mu2) : "") + "," +
             (cert ? csv_number(r.kappa) : "") + "," + (cert ? csv_number(r.c1_ratio) : "") + "," +
             (cert ? std::to_string(r.failed) : "") + "," + csv_field(r.failed_ids) + "," +
             (cert ? std::to_string(r.vacuous) : "") + "," +
             (cert ? (r.overall ? "pass" : "fail") : "") + "\n";
    }
    out += "SUMMARY," + csv_field(s.argmin_instance) + ",summary," +
           csv_field("instances=" + std::to_string(s.instances) + ";certified=" + std::to_string(s.certified) +
                     ";skipped=" + std::to_string(s.skipped)) +
           ",,,,,," + (s.min_c1_ratio ? csv_number(*s.min_c1_ratio) : "") + "," + std::to_string(s.failed_instances) +
           ",,," + (s.failed_instances == 0 ? "pass" : "fail") + "\n";
    return out;
  }
  ojson j;
  ojson rows = ojson::array();
  for (const auto& r : scan.rows) {
    ojson rj;
    const bool cert = r.status == ScanRowStatus::kCertified;
    rj["instance"] = r.instance;
    rj["status"] = cert ? "certified" : "skipped";
    rj["reason"] = r.reason;
    rj["n"] = r.n;
    rj["d"] = r.d;
    rj["mu"] = cert ? number(r.mu) : ojson(nullptr);
    rj["mu2"] = cert ? number(r.mu2) : ojson(nullptr);
    rj["kappa"] = cert ? number(r.kappa) : ojson(nullptr);
    rj["c1_ratio"] = cert ? number(r.c1_ratio) : ojson(nullptr);
    rj["failed_checks"] = r.failed;
    rj["failed_ids"] = r.failed_ids;
    rj["vacuous_checks"] = r.vacuous;
    rj["overall"] = cert ? ojson(r.overall ? "pass" : "fail") : ojson(nullptr);
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["summary"] = {{"instances", s.instances},
                  {"certified", s.certified},
                  {"skipped", s.skipped},
                  {"failed_instances", s.failed_instances},
                  {"min_c1_ratio", s.min_c1_ratio ? number(*s.min_c1_ratio) : ojson(nullptr)},
                  {"argmin_instance", s.argmin_instance},
                  {"overall", s.failed_instances == 0 ? "pass" : "fail"}};
  return j.dump(2) + "\n";
}

}  // namespace gapcert
