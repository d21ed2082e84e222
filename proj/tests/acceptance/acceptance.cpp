// Runs the nine acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gapcert/error.hpp"
#include "gapcert/gapcert.h"
#include "support/corpus.hpp"

using namespace gapcert;
using gapcert::testing::check;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool circulant_match(double lambda, int n, const std::vector<int>& s) {
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int x : s) sum += std::cos(2.0 * std::numbers::pi * k * x / n);
    if (std::abs(sum - lambda) <= 1e-9) return true;
  }
  return false;
}

Outcome oracle_spectra() {
  Outcome o;
  FamilySpec spec;
  spec.n_min = 3;
  spec.n_max = 15;
  spec.n_step = 2;
  spec.degree_max = 6;
  int count = 0;
  for (const auto& m : enumerate_family(spec)) {
    if (!m.instance) continue;
    ++count;
    for (double lambda : spectrum(*m.instance).eigenvalues)
      o.expect(circulant_match(lambda, m.instance->n(), *m.instance->connection_set()),
               m.descriptor + " eigenvalue " + fmt(lambda));
  }
  o.detail = std::to_string(count) + " circulants";
  return o;
}

Outcome corpus_c1_c2() {
  Outcome o;
  int c2_active = 0;
  const auto& reports = gapcert::testing::full_corpus_reports();
  for (const auto& r : reports) {
    const auto& c1 = check(r, "C1");
    o.expect(c1.status == CheckStatus::kPass && c1.margin > 0, r.instance + " C1 margin " + fmt(c1.margin));
    const auto& c2 = check(r, "C2");
    if (c2.hypothesis_satisfied) {
      ++c2_active;
      o.expect(c2.status == CheckStatus::kPass, r.instance + " C2");
    }
  }
  o.detail = std::to_string(reports.size()) + " instances, C2 active on " + std::to_string(c2_active);
  return o;
}

Outcome exact_spot_values() {
  Outcome o;
  const auto c = [](int n, std::vector<int> s) { return gapcert::testing::cayley(cyclic_group(n), std::move(s)); };
  const auto k3 = c(3, {1, 2});
  const auto c5 = c(5, {1, 4});
  const auto c4 = c(4, {1, 3});
  const auto eq = [&](const Rational& got, const Rational& want, const std::string& what) {
    o.expect(got == want, what + " = " + got.str() + ", expected " + want.str());
  };
  eq(edge_bipartiteness_exact(k3), Rational(1, 4), "beta_edge(K3)");
  eq(edge_cheeger_exact(k3), Rational(1, 1), "edge Cheeger(K3)");
  eq(vertex_cheeger_exact(k3), Rational(2, 1), "vertex Cheeger(K3)");
  eq(edge_cheeger_exact(c5), Rational(1, 2), "edge Cheeger(C5)");
  eq(vertex_cheeger_exact(c5), Rational(1, 1), "vertex Cheeger(C5)");
  eq(edge_bipartiteness_exact(c4), Rational(0, 1), "beta_edge(C4)");
  eq(edge_bipartiteness_exact(c5), Rational(1, 8), "beta_edge(C5)");
  o.detail = "7 exact rationals";
  return o;
}

Outcome sandwich_chains() {
  Outcome o;
  int count = 0;
  for (const auto& r : gapcert::testing::full_corpus_reports()) {
    if (r.n > kDefaultMaxExactBipartiteness) continue;
    ++count;
    for (const char* id : {"C4", "C5", "C7"}) {
      const auto& c = check(r, id);
      o.expect(c.status == CheckStatus::kPass,
               r.instance + " " + id + " " + std::string(check_status_name(c.status)) + " at '" + c.worst_part +
                   "' margin " + fmt(c.margin));
    }
  }
  const auto k3 = certify_instance(gapcert::testing::cayley(cyclic_group(3), {1, 2}));
  o.expect(k3.edge_bipartiteness.value == Rational(1, 4), "K3 beta_edge");
  o.expect(std::abs(1 + k3.mu - 0.5) <= 1e-12, "K3 1+mu = " + fmt(1 + k3.mu));
  o.detail = std::to_string(count) + " instances with n <= 13";
  return o;
}

Outcome norm_overlap_checks() {
  Outcome o;
  int count = 0;
  for (const auto& r : gapcert::testing::full_corpus_reports()) {
    if (!(r.kappa > 0 && r.kappa < 1)) continue;
    ++count;
    for (const char* id : {"C6", "C8", "C11", "C12"}) {
      const auto& c = check(r, id);
      o.expect(c.status == CheckStatus::kPass && c.margin >= -1e-9, r.instance + " " + id);
    }
    for (const char* id : {"C9", "C10"}) {
      const auto& c = check(r, id);
      if (c.hypothesis_satisfied)
        o.expect(c.status == CheckStatus::kPass && c.margin >= -1e-9, r.instance + " " + id);
    }
  }
  o.detail = std::to_string(count) + " instances with 0 < kappa < 1";
  return o;
}

Outcome freiman_units() {
  Outcome o;
  const double np = 1.5;
  const auto two = CorrelationProfile::synthetic({np, 0, np, 0, np, 0}, np);
  const auto ex = extract_index_two(two, *cyclic_group(6), 0.1);
  o.expect(ex.subgroup == ElementSet{0, 2, 4} && ex.index_two, "two-cluster extraction");
  bool raised = false;
  try {
    extract_index_two(CorrelationProfile::synthetic({1, 1, 0, 0, 0, 0}, 1), *cyclic_group(6), 0.1);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::kNotASubgroup;
  }
  o.expect(raised, "{0,1} raises NotASubgroup");

  const auto p = gapcert::testing::prism();
  std::vector<double> seed(6);
  for (int j = 0; j < 6; ++j) seed[j] = std::cos(std::numbers::pi * j / 3.0);
  const auto prof = condition_eigenfunction(p, spectrum(p), seed);
  const auto v = dichotomy_test(correlation_profile(prof, p.action()), 0.1);
  o.expect(v.dichotomy_holds && v.witness == 1, "prism witness shift-by-1");
  o.expect(std::abs(v.witness_ratio - 2.0 / 3.0) <= 1e-12, "prism ratio " + fmt(v.witness_ratio));
  o.detail = "ratio " + fmt(v.witness_ratio);
  return o;
}

Outcome prism_c15() {
  Outcome o;
  const auto p = gapcert::testing::prism();
  const auto l2r = verify_left2right(p);
  o.expect(l2r.verified && l2r.rho_equals_tau, "Left2Right with rho_tau = tau");
  const auto r = certify_instance(p);
  o.expect(r.nu == 1.0, "nu = " + fmt(r.nu));
  o.expect(r.dichotomy_holds, "dichotomy present");
  o.expect(std::abs(1 + r.mu - 1.0 / 3.0) <= 1e-12, "1+mu = " + fmt(1 + r.mu));
  const auto& c = check(r, "C15");
  o.expect(c.status == CheckStatus::kPass, "C15 status");
  // The /2521 part: 1/3 − (2/3)/2521.
  const double margin_2521 = (1 + r.mu) - (1 - r.mu2) / 2521.0;
  o.expect(margin_2521 > 0.33, "margin " + fmt(margin_2521));
  o.expect(c.margin > 0.33, "reported margin " + fmt(c.margin));
  o.detail = "margin " + fmt(margin_2521);
  return o;
}

Outcome scale_free() {
  Outcome o;
  const auto& corpus = gapcert::testing::full_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = gapcert::testing::full_corpus_reports()[i];
    const auto twice = repeat_connections(corpus[i], 2);
    const auto sp = spectrum(twice);
    o.expect(twice.d() == 2 * a.d, a.instance + " degree");
    o.expect(std::abs(sp.mu - a.mu) <= 1e-9 && std::abs(sp.mu2 - a.mu2) <= 1e-9, a.instance + " spectrum moved");
    CertifyOptions opt;
    opt.max_exact_bipartiteness = 0;
    opt.max_exact_cheeger = 0;
    const auto b = certify_instance(twice, opt);
    o.expect(check(b, "C1").status == CheckStatus::kPass, a.instance + " C1 after doubling");
  }
  o.detail = std::to_string(corpus.size()) + " instances doubled";
  return o;
}

std::string capi_text(const std::function<gc_status(char**)>& fn) {
  char* s = nullptr;
  if (fn(&s) != GC_OK) return std::string("error: ") + gc_last_error();
  std::string out = s;
  gc_string_free(s);
  return out;
}

Outcome determinism() {
  Outcome o;
  for (const char* rel : {"instances/k3.json", "instances/prism.json", "instances/petersen.json"}) {
    std::string first;
    for (int run = 0; run < 3; ++run) {
      gc_instance* inst = nullptr;
      gc_report* rep = nullptr;
      if (gc_instance_from_file(gapcert::testing::data_path(rel).c_str(), nullptr, &inst) != GC_OK ||
          gc_certify(inst, nullptr, &rep) != GC_OK) {
        o.expect(false, std::string(rel) + ": " + gc_last_error());
        gc_instance_free(inst);
        break;
      }
      const std::string text = capi_text([&](char** s) { return gc_report_serialize(rep, GC_FORMAT_JSON, s); }) +
                               capi_text([&](char** s) { return gc_report_serialize(rep, GC_FORMAT_CSV, s); });
      gc_report_free(rep);
      gc_instance_free(inst);
      if (run == 0)
        first = text;
      else
        o.expect(text == first, std::string(rel) + " analyze bytes differ");
    }
  }
  std::string first;
  for (int workers : {1, 2, 4, 3}) {
    gc_options opt;
    gc_options_default(&opt);
    opt.workers = workers;
    gc_scan* scan = nullptr;
    const auto path = gapcert::testing::data_path("families/odd_cyclic.json");
    if (gc_scan_from_file(path.c_str(), &opt, &scan) != GC_OK) {
      o.expect(false, std::string("scan: ") + gc_last_error());
      break;
    }
    const std::string text = capi_text([&](char** s) { return gc_scan_serialize(scan, GC_FORMAT_CSV, s); }) +
                             capi_text([&](char** s) { return gc_scan_serialize(scan, GC_FORMAT_JSON, s); });
    gc_scan_free(scan);
    if (first.empty())
      first = text;
    else
      o.expect(text == first, "scan bytes differ with " + std::to_string(workers) + " workers");
  }
  o.detail = "3 instances x 3 runs, scan with 1/2/4/3 workers";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
    double budget_s;  // 0 = no runtime bound
  };
  const std::vector<Criterion> criteria{
      {1, "oracle spectra", oracle_spectra, 10.0},
      {2, "C1/C2 on the corpus", corpus_c1_c2, 60.0},
      {3, "exact spot values", exact_spot_values, 0.0},
      {4, "sandwich and kappa-beta chains (C4, C5, C7)", sandwich_chains, 0.0},
      {5, "norm and overlap checks (C6, C8-C12)", norm_overlap_checks, 0.0},
      {6, "Freiman units", freiman_units, 0.0},
      {7, "C15 on the prism", prism_c15, 0.0},
      {8, "scale-free doubling", scale_free, 0.0},
      {9, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) o.expect(false, "runtime " + fmt(secs) + " s over " + fmt(c.budget_s));
    std::printf("[%s] criterion %d: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    for (const auto& p : o.problems) std::printf("       %s\n", p.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
