#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncorr::cli {

// A grid spec is one of
//   lin:a:b:count   count equally spaced values x in [a, b]; the tuple is (0, x, 2x, ..., (n-1)x)
//   random:count    count random tuples (first point 0, others uniform in [0, 3)) from the run seed
//   <path>          a text file with one tuple per line (n values, or n-1 offsets after an implicit 0)
// Values are in raw units unless the caller rescales them.
std::vector<std::vector<double>> parse_grid(const std::string& spec, int n, std::uint64_t seed);

}  // namespace ncorr::cli
