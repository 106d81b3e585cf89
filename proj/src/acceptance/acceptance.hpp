#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace wsa::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::string out_dir = "acceptance-out";
  std::uint64_t seed = 20240611;
};

/// formulas, dirichlet, oracle, fractal, determinism, all.
const std::vector<std::string>& suite_names();

/// Runs a suite, writing its CSV reports under out_dir/<suite>/ and one
/// line per criterion to `log` as it finishes. Throws ParseError for an
/// unknown suite.
std::vector<CriterionResult> run_suite(std::string_view suite, const SuiteOptions& options,
                                       std::ostream& log);

}  // namespace wsa::acceptance
