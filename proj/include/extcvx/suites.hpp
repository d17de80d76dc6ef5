#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace extcvx {

struct SuiteResult {
  std::string name;
  long checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Names accepted by `run_suite`: extreal, residuation, scalar-fn, calculus,
/// setvalued.
std::vector<std::string> suite_names();

/// Runs a seeded property suite with `iters` random cases per law. Throws
/// std::invalid_argument for an unknown name. At most `max_failures`
/// counterexamples are recorded.
SuiteResult run_suite(const std::string& name, long iters, std::uint64_t seed, double tol = 1e-9,
                      std::size_t max_failures = 20);

}  // namespace extcvx
