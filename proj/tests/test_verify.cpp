#include <prelie/verify.hpp>

#include <gtest/gtest.h>

#include <stdexcept>

using namespace prelie;

TEST(Verify, TreeCountRecursion) {
  const auto a = verify::rooted_tree_counts(9);
  const long expected[] = {0, 1, 1, 2, 4, 9, 20, 48, 115, 286};
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(a[static_cast<std::size_t>(n)], expected[n]);
}

TEST(Verify, EverySuitePassesAtDefaults) {
  const verify::Config config;
  for (const auto& suite : verify::suite_names()) {
    const auto checks = verify::run_suite(suite, config);
    EXPECT_FALSE(checks.empty()) << suite;
    for (const auto& c : checks) {
      EXPECT_EQ(c.suite, suite);
      EXPECT_TRUE(c.passed()) << c.name << ": " << c.first_failure;
    }
  }
}

TEST(Verify, ForestSuiteAtOrderFiveCoversTheTrees) {
  verify::Config config;
  config.tree_order = 5;
  for (const auto& c : verify::run_suite("forest", config)) {
    if (c.name.rfind("CK", 0) == 0) {
      EXPECT_GE(c.instances, 17 * (config.max_k - 1)) << c.name;
    }
  }
}

TEST(Verify, ReportShape) {
  verify::Config config;
  config.tree_order = 3;
  const auto report = verify::report_json(verify::run_suite("trees", config));
  EXPECT_TRUE(report["passed"].get<bool>());
  ASSERT_FALSE(report["checks"].empty());
  EXPECT_TRUE(report["checks"][0].contains("instances"));
}

TEST(Verify, FailuresAreRecorded) {
  verify::Check c("x", "y");
  c.record(true, [] { return std::string("a"); });
  c.record(false, [] { return std::string("first"); });
  c.record(false, [] { return std::string("second"); });
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(c.failures, 2);
  EXPECT_EQ(c.first_failure, "first");
  EXPECT_FALSE(verify::report_json({c})["passed"].get<bool>());
  EXPECT_FALSE(verify::Check("x", "empty").passed());
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(verify::run_suite("nope", verify::Config{}), std::invalid_argument); }
