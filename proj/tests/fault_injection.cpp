// Linked against a core library whose gamma_fn is scaled by 1.01.

#include <gtest/gtest.h>

#include <sstream>

#include "fks/cli.hpp"
#include "fks/validate.hpp"

TEST(FaultInjection, PowerRuleCriterionFails) {
  const fks::ValidationReport report = fks::run_validation();
  const fks::CheckResult* power_rule = report.find(11);
  ASSERT_NE(power_rule, nullptr);
  EXPECT_FALSE(power_rule->passed);
  EXPECT_GT(power_rule->measured, 5e-3);
  EXPECT_FALSE(report.gating_passed());
}

TEST(FaultInjection, ValidateExitsOne) {
  std::ostringstream out, err;
  EXPECT_EQ(fks::cli::run({"validate"}, out, err), fks::cli::kValidationFailure);
  EXPECT_NE(out.str().find("[FAIL] 11"), std::string::npos);
}
