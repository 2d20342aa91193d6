#include "document.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncorr/error.hpp"

namespace ncorr::cli {

Document::Document(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

json Document::finish() const {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_;
  doc["config"] = config_;
  doc["results"] = results_;
  if (!summary_.empty()) doc["summary"] = summary_;
  doc["caveats"] = caveats_;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  doc["timing"] = {{"wall_seconds", secs}};
  return doc;
}

namespace {

std::string cell(const json& v) {
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
    return s;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void write_csv(std::ostream& out, const json& results) {
  if (results.empty()) return;
  std::vector<std::string> keys;
  for (auto it = results[0].begin(); it != results[0].end(); ++it) keys.push_back(it.key());
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << '\n';
  for (const auto& r : results) {
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << (r.contains(keys[i]) ? cell(r[keys[i]]) : "");
    out << '\n';
  }
}

}  // namespace

void Document::write(const std::string& path, const std::string& format) const {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw Error(Errc::IoError, "cannot write " + path);
    out = &file;
  }
  if (format == "csv")
    write_csv(*out, results_);
  else
    *out << finish().dump(2) << '\n';
}

}  // namespace ncorr::cli
