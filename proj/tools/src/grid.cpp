#include "grid.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "ncorr/error.hpp"

namespace ncorr::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "bad number '" + s + "' in grid spec '" + spec + "'");
  }
}

}  // namespace

std::vector<std::vector<double>> parse_grid(const std::string& spec, int n, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  if (spec.rfind("lin:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 4) throw Error(Errc::InvalidArgument, "lin grid needs lin:a:b:count");
    const double a = to_double(parts[1], spec), b = to_double(parts[2], spec);
    const int count = static_cast<int>(to_double(parts[3], spec));
    if (count < 1) throw Error(Errc::InvalidArgument, "grid count must be positive");
    for (int k = 0; k < count; ++k) {
      const double x = count == 1 ? a : a + (b - a) * k / (count - 1);
      std::vector<double> tup(n);
      for (int j = 0; j < n; ++j) tup[j] = n == 1 ? x : j * x;
      out.push_back(tup);
    }
    return out;
  }
  if (spec.rfind("random:", 0) == 0) {
    const int count = static_cast<int>(to_double(spec.substr(7), spec));
    if (count < 1) throw Error(Errc::InvalidArgument, "grid count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < count; ++k) {
      std::vector<double> tup(n, 0.0);
      for (int j = 1; j < n; ++j) tup[j] = u(rng);
      if (n == 1) tup[0] = u(rng);
      out.push_back(tup);
    }
    return out;
  }
  std::ifstream in(spec);
  if (!in) throw Error(Errc::InvalidArgument, "grid '" + spec + "' is neither lin:, random: nor a readable file");
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<double> tup;
    double v;
    while (ss >> v) tup.push_back(v);
    if (!ss.eof()) throw Error(Errc::ParseError, "bad grid line", lineno);
    if (static_cast<int>(tup.size()) == n - 1) tup.insert(tup.begin(), 0.0);
    if (static_cast<int>(tup.size()) != n) throw Error(Errc::ParseError, "grid line has the wrong arity", lineno);
    out.push_back(tup);
  }
  if (out.empty()) throw Error(Errc::EmptyFile, "grid file has no tuples");
  return out;
}

}  // namespace ncorr::cli
