#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/freiman.hpp"
#include "gapcert/invariants.hpp"

namespace gapcert {

struct CertifyOptions {
  std::optional<double> xi;  // default: 4/5 when ν = 1, else 123/1000
  double tolerance = 1e-9;
  int max_exact_bipartiteness = kDefaultMaxExactBipartiteness;
  int max_exact_cheeger = kDefaultMaxExactCheeger;
  bool assume_simple = false;  // simplicity of groups above the brute-force cap
  std::optional<std::vector<Permutation>> left2right;
};

enum class CheckStatus { kPass, kFail, kVacuous };
std::string_view check_status_name(CheckStatus status);

struct CheckResult {
  std::string id;    // "C1" .. "C15"
  std::string name;
  bool hypothesis_satisfied = false;
  std::string hypothesis;  // what was required, with the failing part when vacuous
  double lhs = 0.0;        // every inequality is stored as lhs ≥ rhs
  double rhs = 0.0;
  double margin = 0.0;
  std::string lhs_exact;  // "p/q" where the side is an exact constant
  std::string rhs_exact;
  std::string worst_part;  // label of the reported sub-inequality
  int parts = 0;           // sub-inequalities evaluated
  CheckStatus status = CheckStatus::kVacuous;
  bool borderline = false;
  std::string note;
};

struct ExactConstant {
  std::optional<Rational> value;
  std::string unavailable_reason;
};

struct CertificateReport {
  std::string instance;
  std::string kind;
  int n = 0;
  int d = 0;
  int group_order = 0;
  double mu = 0.0;
  double mu2 = 0.0;
  double kappa = 0.0;

  // Eigenfunction summary.
  int bottom_multiplicity = 0;
  int supp_plus = 0;
  int supp_minus = 0;
  double residual = 0.0;
  bool eigen_conditions = false;
  std::string conditioning_note;

  DerivedConstants derived;
  ExactConstant edge_cheeger;
  ExactConstant vertex_cheeger;
  ExactConstant edge_bipartiteness;
  double nu = 1.0;
  int index_two_subgroups = 0;
  bool no_transitive_index_two = true;
  bool group_simple_or_odd = false;

  bool left2right_verified = false;
  std::string left2right_source;
  bool dichotomy_holds = false;
  std::optional<int> dichotomy_witness;
  double dichotomy_ratio = 0.0;
  std::optional<ElementSet> extracted_subgroup;

  std::vector<CheckResult> checks;  // C1..C15 in order
  bool overall = true;
  std::string hypothesis_summary;

  int failed_count() const;
  int vacuous_count() const;
};

/// Throws kValidationRejected for instances that are directed, disconnected,
/// bipartite, or too small. Other problems are recorded on the checks.
CertificateReport certify_instance(const SpectralInstance& inst, const CertifyOptions& options = {});

enum class ReportFormat { kJson, kCsv };

/// Stable field order; exact constants appear as "p/q" next to their decimal.
std::string serialize_report(const CertificateReport& report, ReportFormat format);

// Family scans ---------------------------------------------------------------

enum class ConnectionPolicy { kAllSymmetric, kAllSubsets, kExplicit };
enum class AutomorphismPolicy { kIdentity, kInversion, kUnits, kExplicit };

struct FamilySpec {
  GraphKind kind = GraphKind::kCayley;
  GroupFamily family = GroupFamily::kCyclic;
  int n_min = 1;
  int n_max = 0;
  int n_step = 1;
  int degree_max = 1;
  ConnectionPolicy connection_policy = ConnectionPolicy::kAllSymmetric;
  std::vector<std::vector<int>> connection_sets;  // kExplicit
  AutomorphismPolicy automorphism_policy = AutomorphismPolicy::kIdentity;
  std::vector<Permutation> automorphisms;  // kExplicit
  int max_instances = 10000;
};

struct FamilyMember {
  std::string descriptor;
  std::optional<SpectralInstance> instance;
  std::string skip_reason;  // set when instance is empty
};

/// Enumerates the family in a fixed order. Throws kUnsupportedParameter when
/// the number of candidates exceeds max_instances.
std::vector<FamilyMember> enumerate_family(const FamilySpec& spec);

enum class ScanRowStatus { kCertified, kSkipped };

struct ScanRow {
  std::string instance;
  ScanRowStatus status = ScanRowStatus::kSkipped;
  std::string reason;
  int n = 0;
  int d = 0;
  double mu = 0.0;
  double mu2 = 0.0;
  double kappa = 0.0;
  double c1_ratio = 0.0;  // (1+μ)·50000·d / (1−μ₂)
  int failed = 0;
  std::string failed_ids;  // comma-separated check ids
  int vacuous = 0;
  bool overall = true;
};

struct ScanSummary {
  int instances = 0;
  int certified = 0;
  int skipped = 0;
  int failed_instances = 0;
  std::optional<double> min_c1_ratio;
  std::string argmin_instance;
};

struct ScanResult {
  std::vector<ScanRow> rows;  // enumeration order
  ScanSummary summary;
};

/// Certifies every valid member; rows keep enumeration order whatever the
/// worker count, so the output is identical for any `workers`.
ScanResult scan_family(const FamilySpec& spec, const CertifyOptions& options, int workers = 1);

std::string serialize_scan(const ScanResult& scan, ReportFormat format);

}  // namespace gapcert
