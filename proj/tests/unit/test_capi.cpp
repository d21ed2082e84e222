#include <gtest/gtest.h>

#include <string>

#include "gapcert/gapcert.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gc_string_free(s);
  return out;
}

std::string data(const char* rel) { return std::string(GAPCERT_DATA_DIR) + "/" + rel; }

}  // namespace

TEST(CApi, AnalyzeK3) {
  gc_instance* inst = nullptr;
  ASSERT_EQ(gc_instance_from_file(data("instances/k3.json").c_str(), nullptr, &inst), GC_OK);
  EXPECT_EQ(gc_instance_vertex_count(inst), 3);
  EXPECT_EQ(gc_instance_degree(inst), 2);
  gc_report* rep = nullptr;
  ASSERT_EQ(gc_certify(inst, nullptr, &rep), GC_OK);
  EXPECT_EQ(gc_report_overall(rep), 1);
  EXPECT_EQ(gc_report_check_count(rep), 15);
  EXPECT_EQ(gc_report_failed_count(rep), 0);
  char* text = nullptr;
  ASSERT_EQ(gc_report_serialize(rep, GC_FORMAT_JSON, &text), GC_OK);
  EXPECT_NE(take(text).find("\"C15\""), std::string::npos);
  ASSERT_EQ(gc_report_hypothesis_summary(rep, &text), GC_OK);
  EXPECT_EQ(take(text).rfind("hypotheses:", 0), 0u);
  gc_report_free(rep);
  gc_instance_free(inst);
}

TEST(CApi, ValidationReason) {
  gc_instance* inst = nullptr;
  ASSERT_EQ(gc_instance_from_file(data("instances/c6_bipartite.json").c_str(), nullptr, &inst), GC_OK);
  int valid = 1;
  char* reason = nullptr;
  ASSERT_EQ(gc_instance_validation(inst, &valid, &reason), GC_OK);
  EXPECT_EQ(valid, 0);
  EXPECT_EQ(take(reason), "bipartite");
  gc_report* rep = nullptr;
  EXPECT_EQ(gc_certify(inst, nullptr, &rep), GC_ERR_REJECTED);
  gc_instance_free(inst);
}

TEST(CApi, StatusCodes) {
  gc_instance* inst = nullptr;
  EXPECT_EQ(gc_instance_from_json("{", nullptr, &inst), GC_ERR_PARSE);
  EXPECT_EQ(gc_instance_from_file(data("instances/bad_generator.json").c_str(), nullptr, &inst),
            GC_ERR_INVALID_PERMUTATION);
  EXPECT_NE(std::string(gc_last_error()).find("generators"), std::string::npos);
  EXPECT_EQ(gc_instance_from_json(R"({"kind":"cayley","group":{"family":"cyclic","n":5},"connection_set":[1]})",
                                  nullptr, &inst),
            GC_ERR_REJECTED);
  EXPECT_EQ(gc_instance_from_json(nullptr, nullptr, &inst), GC_ERR_ARGUMENT);
  EXPECT_STREQ(gc_status_name(GC_ERR_UNSUPPORTED), "unsupported parameter");
}

TEST(CApi, OptionValidation) {
  gc_options opt;
  gc_options_default(&opt);
  EXPECT_EQ(opt.max_exact_bipartiteness, 13);
  EXPECT_EQ(opt.max_exact_cheeger, 22);
  EXPECT_DOUBLE_EQ(opt.tolerance, 1e-9);
  opt.xi_set = 1;
  opt.xi = 1.5;
  gc_instance* inst = nullptr;
  EXPECT_EQ(gc_instance_from_file(data("instances/k3.json").c_str(), &opt, &inst), GC_ERR_ARGUMENT);
  opt.xi = 0.3;
  opt.workers = 0;
  EXPECT_EQ(gc_instance_from_file(data("instances/k3.json").c_str(), &opt, &inst), GC_ERR_ARGUMENT);
}

TEST(CApi, Spectrum) {
  gc_instance* inst = nullptr;
  ASSERT_EQ(gc_instance_from_file(data("instances/prism.json").c_str(), nullptr, &inst), GC_OK);
  char* text = nullptr;
  ASSERT_EQ(gc_spectrum_json(inst, &text), GC_OK);
  const auto s = take(text);
  EXPECT_NE(s.find("\"eigenvalues\""), std::string::npos);
  EXPECT_NE(s.find("\"mu2\""), std::string::npos);
  gc_instance_free(inst);
}

TEST(CApi, ScanCapOverride) {
  gc_options opt;
  gc_options_default(&opt);
  gc_scan* scan = nullptr;
  EXPECT_EQ(gc_scan_from_file(data("families/over_cap.json").c_str(), &opt, &scan), GC_ERR_UNSUPPORTED);
  opt.max_instances = 1000;
  ASSERT_EQ(gc_scan_from_file(data("families/over_cap.json").c_str(), &opt, &scan), GC_OK);
  EXPECT_GT(gc_scan_certified_count(scan), 100);
  gc_scan_free(scan);
}
