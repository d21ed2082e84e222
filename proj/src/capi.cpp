#include "gapcert/gapcert.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "gapcert/error.hpp"
#include "gapcert/instance_io.hpp"

struct gc_instance {
  gapcert::ParsedInstance parsed;
};

struct gc_report {
  gapcert::CertificateReport report;
};

struct gc_scan {
  gapcert::ScanResult result;
};

namespace {

thread_local std::string g_last_error;

gc_status status_of(gapcert::ErrorCode code) {
  using gapcert::ErrorCode;
  switch (code) {
    case ErrorCode::kParseError: return GC_ERR_PARSE;
    case ErrorCode::kInvalidPermutation: return GC_ERR_INVALID_PERMUTATION;
    case ErrorCode::kUnsupportedParameter:
    case ErrorCode::kClosureExceedsLimit:
    case ErrorCode::kTooLargeForExact: return GC_ERR_UNSUPPORTED;
    case ErrorCode::kNotUndirected:
    case ErrorCode::kNotInvariant:
    case ErrorCode::kNotTransitive:
    case ErrorCode::kNotSymmetric:
    case ErrorCode::kValidationRejected: return GC_ERR_REJECTED;
    case ErrorCode::kNotASubgroup:
    case ErrorCode::kWrongIndex:
    case ErrorCode::kHypothesisNotMet:
    case ErrorCode::kPreconditionViolated: return GC_ERR_PRECONDITION;
    case ErrorCode::kConditioningFailed:
    case ErrorCode::kDegenerateEigenpair: return GC_ERR_NUMERIC;
  }
  return GC_ERR_INTERNAL;
}

template <typename Fn>
gc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const gapcert::Error& e) {
    g_last_error = std::string(gapcert::error_code_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return GC_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GC_ERR_INTERNAL;
  }
}

gc_status argument_error(const char* what) {
  g_last_error = what;
  return GC_ERR_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gc_options resolve(const gc_options* options) {
  gc_options o;
  gc_options_default(&o);
  return options ? *options : o;
}

bool check_options(const gc_options& o) {
  if (o.xi_set && !(o.xi >= 0.0 && o.xi <= 1.0)) {
    g_last_error = "xi must lie in [0, 1]";
    return false;
  }
  if (!(o.tolerance > 0.0)) {
    g_last_error = "tolerance must be positive";
    return false;
  }
  if (o.max_exact_bipartiteness < 1 || o.max_exact_cheeger < 1 || o.max_group_order < 1 || o.workers < 1 ||
      o.max_instances < 0) {
    g_last_error = "caps and worker count must be positive";
    return false;
  }
  return true;
}

gapcert::CertifyOptions certify_options(const gc_options& o) {
  gapcert::CertifyOptions c;
  if (o.xi_set) c.xi = o.xi;
  c.tolerance = o.tolerance;
  c.max_exact_bipartiteness = o.max_exact_bipartiteness;
  c.max_exact_cheeger = o.max_exact_cheeger;
  return c;
}

gc_status run_scan(const std::string& text, const gc_options* options, gc_scan** out) {
  if (!out) return argument_error("null output handle");
  const gc_options o = resolve(options);
  if (!check_options(o)) return GC_ERR_ARGUMENT;
  return guarded([&] {
    gapcert::FamilySpec spec = gapcert::parse_family_spec(text);
    if (o.max_instances > 0) spec.max_instances = o.max_instances;
    auto scan = std::make_unique<gc_scan>();
    scan->result = gapcert::scan_family(spec, certify_options(o), o.workers);
    *out = scan.release();
    return GC_OK;
  });
}

}  // namespace

extern "C" {

void gc_options_default(gc_options* options) {
  if (!options) return;
  options->xi = 0.0;
  options->xi_set = 0;
  options->tolerance = 1e-9;
  options->max_exact_bipartiteness = gapcert::kDefaultMaxExactBipartiteness;
  options->max_exact_cheeger = gapcert::kDefaultMaxExactCheeger;
  options->max_group_order = gapcert::kMaxGroupOrder;
  options->max_instances = 0;
  options->workers = 1;
}

gc_status gc_instance_from_json(const char* json, const gc_options* options, gc_instance** out) {
  if (!json || !out) return argument_error("null argument");
  const gc_options o = resolve(options);
  if (!check_options(o)) return GC_ERR_ARGUMENT;
  return guarded([&] {
    *out = new gc_instance{gapcert::parse_instance(json, o.max_group_order)};
    return GC_OK;
  });
}

gc_status gc_instance_from_file(const char* path, const gc_options* options, gc_instance** out) {
  if (!path || !out) return argument_error("null argument");
  const gc_options o = resolve(options);
  if (!check_options(o)) return GC_ERR_ARGUMENT;
  return guarded([&] {
    *out = new gc_instance{gapcert::load_instance(path, o.max_group_order)};
    return GC_OK;
  });
}

void gc_instance_free(gc_instance* instance) { delete instance; }

gc_status gc_instance_validation(const gc_instance* instance, int* valid, char** reason) {
  if (!instance || !valid) return argument_error("null argument");
  const auto flags = gapcert::validate_instance(instance->parsed.instance);
  *valid = flags.valid() ? 1 : 0;
  if (reason) *reason = dup_string(flags.rejection_reason());
  return GC_OK;
}

int gc_instance_vertex_count(const gc_instance* instance) { return instance ? instance->parsed.instance.n() : 0; }
int gc_instance_degree(const gc_instance* instance) { return instance ? instance->parsed.instance.d() : 0; }

gc_status gc_spectrum_json(const gc_instance* instance, char** out) {
  if (!instance || !out) return argument_error("null argument");
  return guarded([&] {
    const auto& inst = instance->parsed.instance;
    const auto spec = gapcert::spectrum(inst);
    nlohmann::ordered_json j;
    j["instance"] = inst.name();
    j["n"] = inst.n();
    j["d"] = inst.d();
    j["eigenvalues"] = spec.eigenvalues;
    j["mu"] = spec.mu;
    j["mu2"] = spec.mu2;
    *out = dup_string(j.dump(2) + "\n");
    return GC_OK;
  });
}

gc_status gc_certify(const gc_instance* instance, const gc_options* options, gc_report** out) {
  if (!instance || !out) return argument_error("null argument");
  const gc_options o = resolve(options);
  if (!check_options(o)) return GC_ERR_ARGUMENT;
  return guarded([&] {
    gapcert::CertifyOptions c = certify_options(o);
    c.assume_simple = instance->parsed.assume_simple;
    c.left2right = instance->parsed.left2right;
    *out = new gc_report{gapcert::certify_instance(instance->parsed.instance, c)};
    return GC_OK;
  });
}

int gc_report_overall(const gc_report* report) { return report && report->report.overall ? 1 : 0; }
int gc_report_failed_count(const gc_report* report) { return report ? report->report.failed_count() : 0; }
int gc_report_check_count(const gc_report* report) {
  return report ? static_cast<int>(report->report.checks.size()) : 0;
}

gc_status gc_report_serialize(const gc_report* report, gc_format format, char** out) {
  if (!report || !out) return argument_error("null argument");
  return guarded([&] {
    const auto f = format == GC_FORMAT_CSV ? gapcert::ReportFormat::kCsv : gapcert::ReportFormat::kJson;
    *out = dup_string(gapcert::serialize_report(report->report, f));
    return GC_OK;
  });
}

gc_status gc_report_hypothesis_summary(const gc_report* report, char** out) {
  if (!report || !out) return argument_error("null argument");
  *out = dup_string(report->report.hypothesis_summary);
  return GC_OK;
}

void gc_report_free(gc_report* report) { delete report; }

gc_status gc_scan_from_json(const char* json, const gc_options* options, gc_scan** out) {
  if (!json) return argument_error("null argument");
  return run_scan(json, options, out);
}

gc_status gc_scan_from_file(const char* path, const gc_options* options, gc_scan** out) {
  if (!path) return argument_error("null argument");
  std::string text;
  const gc_status st = guarded([&] {
    text = gapcert::read_text_file(path);
    return GC_OK;
  });
  if (st != GC_OK) return st;
  return run_scan(text, options, out);
}

int gc_scan_failed_count(const gc_scan* scan) { return scan ? scan->result.summary.failed_instances : 0; }
int gc_scan_certified_count(const gc_scan* scan) { return scan ? scan->result.summary.certified : 0; }

gc_status gc_scan_serialize(const gc_scan* scan, gc_format format, char** out) {
  if (!scan || !out) return argument_error("null argument");
  return guarded([&] {
    const auto f = format == GC_FORMAT_CSV ? gapcert::ReportFormat::kCsv : gapcert::ReportFormat::kJson;
    *out = dup_string(gapcert::serialize_scan(scan->result, f));
    return GC_OK;
  });
}

void gc_scan_free(gc_scan* scan) { delete scan; }

void gc_string_free(char* s) { std::free(s); }

const char* gc_last_error(void) { return g_last_error.c_str(); }

const char* gc_status_name(gc_status status) {
  switch (status) {
    case GC_OK: return "ok";
    case GC_ERR_PARSE: return "parse error";
    case GC_ERR_INVALID_PERMUTATION: return "invalid permutation";
    case GC_ERR_UNSUPPORTED: return "unsupported parameter";
    case GC_ERR_REJECTED: return "validation rejected";
    case GC_ERR_PRECONDITION: return "precondition violated";
    case GC_ERR_NUMERIC: return "numerical failure";
    case GC_ERR_ARGUMENT: return "invalid argument";
    case GC_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

}  // extern "C"
