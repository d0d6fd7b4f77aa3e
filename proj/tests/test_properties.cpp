#include <gtest/gtest.h>

#include "property_suite.hpp"

using namespace jstrata;

TEST(Properties, RandomModulesSatisfyAllInvariants) {
  const fixtures::SuiteResult res = fixtures::run_property_suite(20261018u, 100);
  EXPECT_GE(res.modules, 200u);
  for (const char* suite : {"dominance", "semicontinuity", "closed-2", "closed-4", "closed-5", "closed-6", "closed-7",
                            "heller-flip", "ezeta", "zclosed", "gammareal"}) {
    EXPECT_GT(res.checks.count(suite) ? res.checks.at(suite) : 0u, 0u) << suite;
  }
  for (const auto& v : res.violations) ADD_FAILURE() << v;
}
