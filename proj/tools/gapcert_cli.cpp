#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gapcert/gapcert.h"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kRejected = 2, kBadInput = 3 };

struct Config {
  std::string input;
  std::string output;
  std::string format = "json";
  double xi = -1.0;
  double tolerance = 1e-9;
  int max_exact_bipartiteness = 13;
  int max_exact_cheeger = 22;
  int max_group_order = 5000;
  int max_instances = 0;
  int parallel = 1;
};

gc_options to_options(const Config& cfg, bool xi_given) {
  gc_options o;
  gc_options_default(&o);
  o.xi_set = xi_given ? 1 : 0;
  o.xi = xi_given ? cfg.xi : 0.0;
  o.tolerance = cfg.tolerance;
  o.max_exact_bipartiteness = cfg.max_exact_bipartiteness;
  o.max_exact_cheeger = cfg.max_exact_cheeger;
  o.max_group_order = cfg.max_group_order;
  o.max_instances = cfg.max_instances;
  o.workers = cfg.parallel;
  return o;
}

int report_error(gc_status st) {
  std::cerr << "error (" << gc_status_name(st) << "): " << gc_last_error() << "\n";
  return st == GC_ERR_REJECTED ? kRejected : kBadInput;
}

bool emit(const Config& cfg, char* text) {
  bool ok = true;
  if (cfg.output.empty()) {
    std::fputs(text, stdout);
    std::fflush(stdout);
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    out << text;
    ok = static_cast<bool>(out);
    if (!ok) std::cerr << "error: cannot write " << cfg.output << "\n";
  }
  gc_string_free(text);
  return ok;
}

gc_format format_of(const Config& cfg) { return cfg.format == "csv" ? GC_FORMAT_CSV : GC_FORMAT_JSON; }

int load(const Config& cfg, const gc_options& opts, gc_instance** inst) {
  const gc_status st = gc_instance_from_file(cfg.input.c_str(), &opts, inst);
  if (st != GC_OK) return report_error(st);
  int valid = 0;
  char* reason = nullptr;
  gc_instance_validation(*inst, &valid, &reason);
  if (!valid) {
    std::cerr << "rejected: " << reason << "\n";
    gc_string_free(reason);
    gc_instance_free(*inst);
    *inst = nullptr;
    return kRejected;
  }
  gc_string_free(reason);
  return kPass;
}

int run_analyze(const Config& cfg, const gc_options& opts) {
  gc_instance* inst = nullptr;
  if (int rc = load(cfg, opts, &inst); rc != kPass) return rc;
  gc_report* report = nullptr;
  const gc_status st = gc_certify(inst, &opts, &report);
  gc_instance_free(inst);
  if (st != GC_OK) return report_error(st);

  char* summary = nullptr;
  gc_report_hypothesis_summary(report, &summary);
  std::cerr << summary << "\n";
  gc_string_free(summary);

  char* text = nullptr;
  gc_status ser = gc_report_serialize(report, format_of(cfg), &text);
  const bool overall = gc_report_overall(report) != 0;
  gc_report_free(report);
  if (ser != GC_OK) return report_error(ser);
  if (!emit(cfg, text)) return kBadInput;
  return overall ? kPass : kCheckFailed;
}

int run_scan(const Config& cfg, const gc_options& opts) {
  gc_scan* scan = nullptr;
  const gc_status st = gc_scan_from_file(cfg.input.c_str(), &opts, &scan);
  if (st != GC_OK) {
    report_error(st);
    return kBadInput;
  }
  char* text = nullptr;
  gc_status ser = gc_scan_serialize(scan, format_of(cfg), &text);
  const int failed = gc_scan_failed_count(scan);
  gc_scan_free(scan);
  if (ser != GC_OK) return report_error(ser);
  if (!emit(cfg, text)) return kBadInput;
  return failed == 0 ? kPass : kCheckFailed;
}

int run_spectrum(const Config& cfg, const gc_options& opts) {
  gc_instance* inst = nullptr;
  const gc_status st = gc_instance_from_file(cfg.input.c_str(), &opts, &inst);
  if (st != GC_OK) return report_error(st);
  char* text = nullptr;
  const gc_status sp = gc_spectrum_json(inst, &text);
  gc_instance_free(inst);
  if (sp != GC_OK) return report_error(sp);
  return emit(cfg, text) ? kPass : kBadInput;
}

void add_common(CLI::App* sub, Config& cfg, CLI::Option*& xi_opt) {
  sub->add_option("input", cfg.input, "instance or family spec file (JSON)")->required();
  xi_opt = sub->add_option("--xi", cfg.xi, "proportion parameter")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--tolerance", cfg.tolerance, "relative slack")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-exact-bipartiteness", cfg.max_exact_bipartiteness)->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-exact-cheeger", cfg.max_exact_cheeger)->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-group-order", cfg.max_group_order)->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--max-instances", cfg.max_instances, "override the family cap")->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format)->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--parallel", cfg.parallel, "scan workers")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gap certificates for Cayley-type graphs"};
  app.require_subcommand(1);
  Config cfg;
  CLI::Option* xi_analyze = nullptr;
  CLI::Option* xi_scan = nullptr;
  CLI::Option* xi_spectrum = nullptr;
  auto* analyze = app.add_subcommand("analyze", "certify one instance");
  auto* scan = app.add_subcommand("scan", "certify every instance of a family");
  auto* spectrum = app.add_subcommand("show-spectrum", "print the normalized spectrum");
  add_common(analyze, cfg, xi_analyze);
  add_common(scan, cfg, xi_scan);
  add_common(spectrum, cfg, xi_spectrum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (*analyze) return run_analyze(cfg, to_options(cfg, xi_analyze->count() > 0));
  if (*scan) return run_scan(cfg, to_options(cfg, xi_scan->count() > 0));
  return run_spectrum(cfg, to_options(cfg, xi_spectrum->count() > 0));
}
