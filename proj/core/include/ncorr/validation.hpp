#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncorr::validation {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationConfig {
  std::uint64_t seed = 20240601;
  std::uint64_t samples = 20000;
  int prime_cutoff = 101;
  int quad_nodes = 256;
  int em_terms = 12;
  std::string zeros_path;
  unsigned workers = 0;
};

const std::vector<std::string>& check_names();

// Runs one named check. Unknown names throw InvalidArgument; a check that
// needs an input that was not supplied throws MissingInput.
CheckResult run_check(const std::string& name, const ValidationConfig& cfg);

}  // namespace ncorr::validation
