#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"

namespace ncorr::rmt {

template <class F>
std::pair<cplx, cplx> laurent_coefficients(F&& f, cplx center, const LaurentProbe& probe) {
  cplx c1 = 0.0, c2 = 0.0;
  for (int k = 0; k < probe.nodes; ++k) {
    const cplx h = std::polar(probe.radius, kTwoPi * (k + 0.5) / probe.nodes);
    const cplx v = f(center + h);
    c1 += v * h;
    c2 += v * h * h;
  }
  return {c1 / double(probe.nodes), c2 / double(probe.nodes)};
}

template <class Rng>
std::vector<double> random_separated_angles(int n, double min_sep, Rng& rng) {
  std::uniform_real_distribution<double> U(0.0, kTwoPi);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> th(n);
    for (auto& t : th) t = U(rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        const double d = std::abs(std::remainder(th[i] - th[j], kTwoPi));
        ok = d >= min_sep;
      }
    if (ok) return th;
  }
  throw Error(Errc::InvalidArgument, "could not draw separated angles");
}

}  // namespace ncorr::rmt
