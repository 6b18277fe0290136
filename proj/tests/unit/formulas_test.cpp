#include <gtest/gtest.h>

#include "checks.hpp"

namespace famfeat::testing {
namespace {

TEST(FormulaOracles, EveryCheckPasses) {
  for (const auto& check : formula_oracle_checks()) {
    EXPECT_TRUE(check.pass) << check.name << ": " << check.detail;
  }
}

TEST(FormulaOracles, DwtParseval) {
  const auto check = dwt_parseval_check(200, 5);
  EXPECT_TRUE(check.pass) << check.detail;
}

TEST(FormulaOracles, RspSumsToOne) {
  const auto check = rsp_normalization_check(77);
  EXPECT_TRUE(check.pass) << check.detail;
}

}  // namespace
}  // namespace famfeat::testing
