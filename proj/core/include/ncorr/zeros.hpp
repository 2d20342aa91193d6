#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncorr/primes.hpp"

namespace ncorr::zeros {

struct ZeroTable {
  std::vector<double> gammas;  // strictly increasing, positive
  std::string source;
  std::size_t count() const noexcept { return gammas.size(); }
};

// Whitespace-separated decimal ordinates; lines starting with '#' are comments.
ZeroTable parse_zero_table(std::istream& in, std::string source);
ZeroTable load_zero_table(const std::string& path);
// Round-trippable text form (17 significant digits).
void write_zero_table(std::ostream& out, const ZeroTable& table);

struct CountingCheck {
  std::size_t observed = 0;
  double predicted = 0.0;  // (T / 2 pi) log(T / 2 pi e)
  bool flagged = false;    // |observed - predicted| > 2 + 2 log T
};

CountingCheck counting_check(const ZeroTable& table, double T);

// Mean zero spacing 2 pi / log(t / 2 pi).
double mean_spacing(double t);

// A translation-invariant test function of n ordinates, given through the
// n - 1 differences gamma_{j} - gamma_{1}; it vanishes once any |difference|
// exceeds `support`.
struct DifferenceTestFunction {
  int n = 2;
  std::function<double(std::span<const double>)> f;
  double support = 0.0;
  std::string descriptor;
};

// exp(-(x - c)^2 / 2 sigma^2) + exp(-(x + c)^2 / 2 sigma^2) for c > 0, a single
// Gaussian for c = 0; support c + 8 sigma.
DifferenceTestFunction gaussian_pair(double sigma, double center = 0.0);
// Indicator of |x| <= width.
DifferenceTestFunction box_pair(double width);

using Window = std::pair<double, double>;

struct EmpiricalStatistic {
  int n = 2;
  Window window{};
  std::string descriptor;
  double value = 0.0;
  double std_error = 0.0;
  std::vector<Window> sub_windows;
  std::vector<double> sub_values;
};

struct EmpiricalOptions {
  int sub_windows = 16;  // geometric split, >= 8
  unsigned workers = 0;
  double max_support_spacings = 50.0;
};

// Sum over ordered distinct tuples of zeros in the window. Each tuple is
// attributed to the sub-window containing its first element; the standard
// error comes from the spread of per-sub-window sums about a fit
// weight_k (a + b log t_k), weight_k = m_k (ell_k / 2 pi)^{n-1}.
EmpiricalStatistic empirical_correlation(const ZeroTable& table, const DifferenceTestFunction& f, Window window,
                                         const EmpiricalOptions& opt = {});
// The O(m^n) definition, for tests.
double empirical_correlation_brute(const ZeroTable& table, const DifferenceTestFunction& f, Window window);

enum class PairModel { FullFormula, SineKernel };

// int_{window} dt/2pi int dx/2pi R_{zeta,t,2}(0, x) f(x), ell approximation at
// each t, with the t-integral done per sub-window.
struct ConjectureSide {
  double value = 0.0;
  std::vector<double> sub_values;
};

class PairConjecture {
 public:
  // Tabulates the arithmetic pair kernel on [0, x_max] once.
  PairConjecture(const primes::PrimeContext& ctx, double x_max, double panel = 0.05);
  // (1/2pi) int R_2(t; 0, x) f(x) dx at fixed ell
  double density_integral(const DifferenceTestFunction& f, double ell, PairModel model) const;
  ConjectureSide window_integral(const DifferenceTestFunction& f, Window window, int sub_windows,
                                 PairModel model) const;
  // R_2(t; 0, x) for x in the tabulated range
  double kernel(double ell, double x, PairModel model) const;

 private:
  const primes::PrimeContext& ctx_;
  double x_max_;
  std::vector<double> x_, w_;
  std::vector<std::complex<double>> core1_, p2_;
};

std::vector<Window> geometric_split(Window w, int parts);

}  // namespace ncorr::zeros
