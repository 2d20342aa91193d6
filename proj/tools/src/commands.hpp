#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "document.hpp"

namespace ncorr::cli {

struct RunConfig {
  int n = 2;
  int size = 8;
  double t = 1e12;
  int prime_cutoff = 10007;
  int quad_nodes = 256;
  int em_terms = 12;
  std::uint64_t seed = 20240601;
  std::uint64_t samples = 20000;
  std::string zeros;
  std::string engine = "closed_form";  // closed_form | general_machinery | both
  std::string chi = "approx";          // approx | exact
  std::string grid = "lin:0.1:3:30";
  bool scaled = false;
  std::string out = "-";
  unsigned workers = 0;
  std::string format = "json";
  std::vector<std::string> checks;
  std::string window = "10000:50000";
  double sigma = 0.25;
  std::vector<double> heights;
};

json echo_config(const RunConfig& cfg, const std::string& command);

// Each returns the process exit code and fills the document.
int cmd_rmt_correlate(const RunConfig& cfg, Document& doc);
int cmd_zeta_correlate(const RunConfig& cfg, Document& doc);
int cmd_validate(const RunConfig& cfg, Document& doc);
int cmd_zeros_check(const RunConfig& cfg, Document& doc);

}  // namespace ncorr::cli
