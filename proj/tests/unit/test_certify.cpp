#include <gtest/gtest.h>

#include <json.hpp>

#include "gapcert/error.hpp"
#include "support/corpus.hpp"

using namespace gapcert;
using gapcert::testing::cayley;
using gapcert::testing::check;

TEST(Certify, K3FullPipeline) {
  const auto r = certify_instance(cayley(cyclic_group(3), {1, 2}));
  EXPECT_EQ(r.checks.size(), 15u);
  EXPECT_TRUE(r.overall);
  EXPECT_EQ(r.edge_bipartiteness.value, Rational(1, 4));
  EXPECT_DOUBLE_EQ(1 + r.mu, 0.5);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(r.checks[i].id, "C" + std::to_string(i + 1));
}

TEST(Certify, PrismVacuityAndC15) {
  const auto r = certify_instance(gapcert::testing::prism());
  EXPECT_NEAR(r.kappa, 0.5, 1e-12);
  for (const char* id : {"C9", "C10", "C13"}) EXPECT_EQ(check(r, id).status, CheckStatus::kVacuous) << id;
  for (const char* id : {"C5", "C6", "C7"}) EXPECT_TRUE(check(r, id).hypothesis_satisfied) << id;
  const auto& c15 = check(r, "C15");
  EXPECT_EQ(c15.status, CheckStatus::kPass);
  EXPECT_EQ(c15.parts, 2);
  EXPECT_TRUE(r.left2right_verified);
  EXPECT_DOUBLE_EQ(r.nu, 1.0);
  EXPECT_TRUE(r.dichotomy_holds);
  EXPECT_GT(c15.margin, 0.33);
}

TEST(Certify, RejectsBipartite) {
  try {
    certify_instance(cayley(cyclic_group(6), {1, 3, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationRejected);
    EXPECT_NE(std::string(e.what()).find("bipartite"), std::string::npos);
  }
}

TEST(Certify, ExactConstantsBeyondCapAreUnavailable) {
  CertifyOptions opt;
  opt.max_exact_bipartiteness = 4;
  const auto r = certify_instance(cayley(cyclic_group(5), {1, 4}), opt);
  EXPECT_FALSE(r.edge_bipartiteness.value.has_value());
  EXPECT_FALSE(r.edge_bipartiteness.unavailable_reason.empty());
  EXPECT_EQ(check(r, "C4").status, CheckStatus::kVacuous);
}

TEST(Certify, XiOverride) {
  CertifyOptions opt;
  opt.xi = 0.5;
  const auto r = certify_instance(gapcert::testing::prism(), opt);
  EXPECT_DOUBLE_EQ(r.derived.xi, 0.5);
  EXPECT_DOUBLE_EQ(certify_instance(gapcert::testing::prism()).derived.xi, 0.8);
}

TEST(Certify, DoublingIsScaleFree) {
  for (const auto& inst : gapcert::testing::odd_cyclic_corpus()) {
    const auto a = certify_instance(inst);
    const auto b = certify_instance(repeat_connections(inst, 2));
    EXPECT_EQ(b.d, 2 * a.d);
    EXPECT_NEAR(a.mu, b.mu, 1e-9) << inst.name();
    EXPECT_NEAR(a.mu2, b.mu2, 1e-9) << inst.name();
    EXPECT_NEAR(check(b, "C1").rhs, check(a, "C1").rhs / 2, 1e-12) << inst.name();
    EXPECT_EQ(check(b, "C1").status, CheckStatus::kPass) << inst.name();
  }
}

TEST(Certify, ReportDeterminism) {
  const auto inst = gapcert::testing::load("instances/petersen.json");
  for (auto fmt : {ReportFormat::kJson, ReportFormat::kCsv})
    EXPECT_EQ(serialize_report(certify_instance(inst), fmt), serialize_report(certify_instance(inst), fmt));
}

TEST(Certify, JsonSchema) {
  const auto text = serialize_report(certify_instance(gapcert::testing::prism()), ReportFormat::kJson);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"instance", "n", "d", "mu", "mu2", "kappa", "checks", "overall", "hypothesis_summary"})
    EXPECT_TRUE(j.contains(key)) << key;
  ASSERT_EQ(j["checks"].size(), 15u);
  for (const auto& c : j["checks"])
    for (const char* key : {"id", "hypothesis_satisfied", "lhs", "rhs", "margin", "status"})
      EXPECT_TRUE(c.contains(key)) << key;
}

TEST(Certify, CsvShape) {
  const auto text = serialize_report(certify_instance(gapcert::testing::prism()), ReportFormat::kCsv);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "instance,id,name,hypothesis_satisfied,lhs,rhs,margin,status,borderline,worst_part,note");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
}

// Every check with satisfied hypotheses should pass on the corpus. C5 and C7
// contain bounds that do not follow from the proven inequality; this test
// reports them as they stand.
TEST(Certify, NoFailuresOnCorpus) {
  const auto& reports = gapcert::testing::full_corpus_reports();
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      EXPECT_NE(c.status, CheckStatus::kFail) << r.instance << " " << c.id << " " << c.worst_part;
}

TEST(Certify, NormAndOverlapChecksHold) {
  for (const auto& r : gapcert::testing::full_corpus_reports()) {
    if (!(r.kappa > 0 && r.kappa < 1)) continue;
    for (const char* id : {"C6", "C8", "C11", "C12"}) {
      const auto& c = check(r, id);
      EXPECT_EQ(c.status, CheckStatus::kPass) << r.instance << " " << id;
      EXPECT_GE(c.margin, -1e-9) << r.instance << " " << id;
    }
    for (const char* id : {"C9", "C10"}) {
      const auto& c = check(r, id);
      if (c.hypothesis_satisfied) EXPECT_EQ(c.status, CheckStatus::kPass) << r.instance << " " << id;
    }
  }
}

TEST(Scan, OverCapRejected) {
  FamilySpec spec;
  spec.n_min = 3;
  spec.n_max = 15;
  spec.n_step = 2;
  spec.degree_max = 6;
  spec.max_instances = 10;
  try {
    enumerate_family(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedParameter);
    EXPECT_NE(std::string(e.what()).find("max_instances"), std::string::npos);
  }
}

TEST(Scan, ParallelMatchesSerial) {
  FamilySpec spec;
  spec.n_min = 3;
  spec.n_max = 11;
  spec.degree_max = 4;
  const auto serial = scan_family(spec, {}, 1);
  const auto parallel = scan_family(spec, {}, 4);
  for (auto fmt : {ReportFormat::kJson, ReportFormat::kCsv})
    EXPECT_EQ(serialize_scan(serial, fmt), serialize_scan(parallel, fmt));
  const auto csv = serialize_scan(serial, ReportFormat::kCsv);
  EXPECT_NE(csv.find("\nSUMMARY,"), std::string::npos);
}

TEST(Scan, SkipsDirectedAndRecordsReasons) {
  FamilySpec spec;
  spec.n_min = spec.n_max = 5;
  spec.degree_max = 1;
  spec.connection_policy = ConnectionPolicy::kAllSubsets;
  const auto members = enumerate_family(spec);
  ASSERT_EQ(members.size(), 5u);
  int directed = 0;
  for (const auto& m : members) directed += m.skip_reason == "directed";
  EXPECT_EQ(directed, 4);
}

TEST(Scan, TwistedUnitsPolicy) {
  FamilySpec spec;
  spec.kind = GraphKind::kTwistedCayley;
  spec.n_min = spec.n_max = 5;
  spec.degree_max = 2;
  spec.automorphism_policy = AutomorphismPolicy::kUnits;
  const auto members = enumerate_family(spec);
  EXPECT_FALSE(members.empty());
  EXPECT_NE(members.back().descriptor.find("sigma=x*4"), std::string::npos);
}
