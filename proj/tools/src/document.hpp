#pragma once

#include <chrono>
#include <string>

#include "json.hpp"

namespace ncorr::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

// Result document: schema_version, command, config, results, caveats, timing.
class Document {
 public:
  explicit Document(std::string command);

  json& config() { return config_; }
  void add_result(json r) { results_.push_back(std::move(r)); }
  void add_caveat(std::string c) { caveats_.push_back(std::move(c)); }
  json& summary() { return summary_; }

  json finish() const;
  // Writes JSON or a CSV flattening of the results array; "-" or empty means stdout.
  void write(const std::string& path, const std::string& format) const;

 private:
  std::string command_;
  json config_ = json::object();
  json results_ = json::array();
  json caveats_ = json::array();
  json summary_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ncorr::cli
