#include <gtest/gtest.h>

#include "extcvx/suites.hpp"

using namespace extcvx;

class SuiteRun : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteRun, PassesWithFixedSeed) {
  const SuiteResult r = run_suite(GetParam(), 200, 2024);
  EXPECT_GT(r.checks, 0);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
}

TEST_P(SuiteRun, Deterministic) {
  const SuiteResult a = run_suite(GetParam(), 30, 9);
  const SuiteResult b = run_suite(GetParam(), 30, 9);
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.failures, b.failures);
}

INSTANTIATE_TEST_SUITE_P(All, SuiteRun, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(run_suite("nope", 1, 0), std::invalid_argument); }
