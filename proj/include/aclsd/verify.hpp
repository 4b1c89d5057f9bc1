#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aclsd::verify {

struct Check {
  std::string suite;
  std::string name;
  int criterion = 0;  // acceptance criterion this check belongs to, 0 if none
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  // Evaluate psi with the pole outside the unit circle. The theory suite
  // must fail when this is set.
  bool inject_psi_fault = false;
  std::size_t threads = 1;
};

// "roots", "theory", "ensemble", "stats"
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite for "all". Throws InvalidInput for an
// unknown name. Exceptions inside a check are recorded as failures.
std::vector<Check> run_suite(std::string_view suite, const Options& options = {});

bool all_passed(const std::vector<Check>& checks);

}  // namespace aclsd::verify
