#include "ncorr/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/parallel.hpp"
#include "ncorr/zeta.hpp"

namespace ncorr::zeros {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

constexpr int kPanelNodes = 8;

}  // namespace

ZeroTable parse_zero_table(std::istream& in, std::string source) {
  ZeroTable t;
  t.source = std::move(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const char* p = line.data() + first;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v = 0.0;
      auto [q, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || (q < end && !(*q == ' ' || *q == '\t' || *q == '\r')))
        throw Error(Errc::ParseError, "not a decimal ordinate", long(lineno));
      if (!(v > 0.0)) throw Error(Errc::ParseError, "ordinates must be positive", long(lineno));
      if (!t.gammas.empty() && !(v > t.gammas.back()))
        throw Error(Errc::NotAscending, "ordinates must be strictly increasing", long(lineno));
      t.gammas.push_back(v);
      p = q;
    }
  }
  if (t.gammas.empty()) throw Error(Errc::EmptyFile, "no ordinates in " + t.source);
  return t;
}

ZeroTable load_zero_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return parse_zero_table(in, path);
}

void write_zero_table(std::ostream& out, const ZeroTable& table) {
  out << "# source: " << table.source << '\n' << std::setprecision(17);
  for (double g : table.gammas) out << g << '\n';
}

double mean_spacing(double t) { return kTwoPi / std::log(t / kTwoPi); }

CountingCheck counting_check(const ZeroTable& table, double T) {
  CountingCheck c;
  c.observed = std::upper_bound(table.gammas.begin(), table.gammas.end(), T) - table.gammas.begin();
  const double u = T / kTwoPi;
  c.predicted = u * std::log(u / std::exp(1.0));
  c.flagged = std::abs(double(c.observed) - c.predicted) > 2.0 + 2.0 * std::log(std::max(T, 1.0));
  return c;
}

DifferenceTestFunction gaussian_pair(double sigma, double center) {
  if (!(sigma > 0)) throw Error(Errc::InvalidArgument, "sigma must be positive");
  DifferenceTestFunction f;
  f.n = 2;
  const double c = std::abs(center);
  f.support = c + 8.0 * sigma;
  f.f = [sigma, c](std::span<const double> d) {
    const double x = d[0];
    const double g = std::exp(-0.5 * (x - c) * (x - c) / (sigma * sigma));
    return c > 0 ? g + std::exp(-0.5 * (x + c) * (x + c) / (sigma * sigma)) : g;
  };
  std::ostringstream os;
  os << "gaussian(sigma=" << sigma << ",center=" << c << ")";
  f.descriptor = os.str();
  return f;
}

DifferenceTestFunction box_pair(double width) {
  DifferenceTestFunction f;
  f.n = 2;
  f.support = width;
  f.f = [width](std::span<const double> d) { return std::abs(d[0]) <= width ? 1.0 : 0.0; };
  f.descriptor = "box(width=" + std::to_string(width) + ")";
  return f;
}

std::vector<Window> geometric_split(Window w, int parts) {
  std::vector<Window> out;
  const double r = std::log(w.second / w.first);
  double lo = w.first;
  for (int k = 1; k <= parts; ++k) {
    const double hi = k == parts ? w.second : w.first * std::exp(r * k / parts);
    out.emplace_back(lo, hi);
    lo = hi;
  }
  return out;
}

namespace {

void check_window(const ZeroTable& table, const DifferenceTestFunction& f, Window window, double max_spacings) {
  if (f.n < 2 || f.n > 3) throw Error(Errc::InvalidArgument, "empirical statistics cover n = 2 and 3");
  if (!(window.first > 0) || !(window.first < window.second)) throw Error(Errc::WindowEmpty, "empty window");
  if (window.second > table.gammas.back()) throw Error(Errc::WindowEmpty, "window extends past the last ordinate");
  const double center = 0.5 * (window.first + window.second);
  if (f.support > max_spacings * mean_spacing(center))
    throw Error(Errc::SupportTooWide, "test function support exceeds " + std::to_string(max_spacings) +
                                          " mean spacings");
}

// Sum over tuples anchored at indices [a0, a1); partners in [w0, w1).
double anchored_sum(const std::vector<double>& g, std::size_t a0, std::size_t a1, std::size_t w0, std::size_t w1,
                    const DifferenceTestFunction& f) {
  std::vector<double> terms;
  double d[2];
  for (std::size_t i = a0; i < a1; ++i) {
    const std::size_t lo = std::max<std::size_t>(
        w0, std::lower_bound(g.begin(), g.end(), g[i] - f.support) - g.begin());
    const std::size_t hi = std::min<std::size_t>(
        w1, std::upper_bound(g.begin(), g.end(), g[i] + f.support) - g.begin());
    double acc = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      if (j == i) continue;
      d[0] = g[j] - g[i];
      if (f.n == 2) {
        acc += f.f(std::span<const double>(d, 1));
        continue;
      }
      for (std::size_t k = lo; k < hi; ++k) {
        if (k == i || k == j) continue;
        d[1] = g[k] - g[i];
        acc += f.f(std::span<const double>(d, 2));
      }
    }
    terms.push_back(acc);
  }
  return tree_sum(terms);
}

}  // namespace

EmpiricalStatistic empirical_correlation(const ZeroTable& table, const DifferenceTestFunction& f, Window window,
                                         const EmpiricalOptions& opt) {
  check_window(table, f, window, opt.max_support_spacings);
  if (opt.sub_windows < 8) throw Error(Errc::InvalidArgument, "need at least 8 sub-windows");
  const auto& g = table.gammas;
  auto index = [&](double T) { return std::size_t(std::upper_bound(g.begin(), g.end(), T) - g.begin()); };
  const std::size_t w0 = index(window.first), w1 = index(window.second);
  if (w0 == w1) throw Error(Errc::WindowEmpty, "no zeros in window");

  EmpiricalStatistic st;
  st.n = f.n;
  st.window = window;
  st.descriptor = f.descriptor;
  st.sub_windows = geometric_split(window, opt.sub_windows);
  const std::size_t S = st.sub_windows.size();
  st.sub_values.assign(S, 0.0);
  std::vector<double> weight(S), u(S);
  const double centre = 0.5 * std::log(window.first * window.second);
  parallel_for(S, opt.workers, [&](std::size_t k) {
    const auto [lo, hi] = st.sub_windows[k];
    const std::size_t a0 = index(lo), a1 = index(hi);
    st.sub_values[k] = anchored_sum(g, a0, a1, w0, w1, f);
    const double mid = 0.5 * (lo + hi);
    weight[k] = double(a1 - a0) * std::pow(std::log(mid / kTwoPi) / kTwoPi, f.n - 1);
    u[k] = std::log(mid) - centre;
  });
  st.value = tree_sum(st.sub_values);
  // sub_k ~ weight_k (a + b u_k): the per-tuple mean drifts with log t for test
  // functions of fixed width, so the residual spread is taken about a linear trend.
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (std::size_t k = 0; k < S; ++k) {
    const double w2 = weight[k] * weight[k];
    s11 += w2, s12 += w2 * u[k], s22 += w2 * u[k] * u[k];
    r1 += weight[k] * st.sub_values[k], r2 += weight[k] * u[k] * st.sub_values[k];
  }
  const double det = s11 * s22 - s12 * s12;
  if (det > 0) {
    const double a = (s22 * r1 - s12 * r2) / det, b = (s11 * r2 - s12 * r1) / det;
    double var = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
      const double r = st.sub_values[k] - weight[k] * (a + b * u[k]);
      var += r * r;
    }
    st.std_error = std::sqrt(var * double(S) / double(S - 2));
  }
  return st;
}

double empirical_correlation_brute(const ZeroTable& table, const DifferenceTestFunction& f, Window window) {
  if (f.n < 2 || f.n > 3) throw Error(Errc::InvalidArgument, "empirical statistics cover n = 2 and 3");
  std::vector<double> in;
  for (double x : table.gammas)
    if (x > window.first && x <= window.second) in.push_back(x);
  if (in.empty()) throw Error(Errc::WindowEmpty, "no zeros in window");
  double total = 0.0;
  double d[2];
  const std::size_t m = in.size();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      d[0] = in[j] - in[i];
      if (f.n == 2) {
        if (std::abs(d[0]) <= f.support) acc += f.f(std::span<const double>(d, 1));
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        d[1] = in[k] - in[i];
        if (std::abs(d[0]) <= f.support && std::abs(d[1]) <= f.support) acc += f.f(std::span<const double>(d, 2));
      }
    }
    total += acc;
  }
  return total;
}

PairConjecture::PairConjecture(const primes::PrimeContext& ctx, double x_max, double panel)
    : ctx_(ctx), x_max_(x_max) {
  std::vector<double> gx, gw;
  gauss_legendre(kPanelNodes, gx, gw);
  const int panels = std::max(1, int(std::ceil(x_max / panel)));
  const double h = x_max / panels;
  for (int k = 0; k < panels; ++k)
    for (int i = 0; i < kPanelNodes; ++i) {
      x_.push_back(h * (k + 0.5 * (1.0 + gx[i])));
      w_.push_back(0.5 * h * gw[i]);
    }
  core1_.resize(x_.size());
  p2_.resize(x_.size());
  const zeta::ClosedForms cf(0.0, ctx_);
  parallel_for(x_.size(), 0, [&](std::size_t i) {
    const std::complex<double> ix{0.0, x_[i]};
    core1_[i] = cf.P1(ix);
    p2_[i] = cf.P2(ix);
  });
}

double PairConjecture::kernel(double ell, double x, PairModel model) const {
  if (model == PairModel::SineKernel) return ell * ell * zeta::sine_kernel_limit(ell * x / kTwoPi);
  const zeta::ClosedForms cf(ell, ctx_);
  const std::complex<double> ix{0.0, x};
  return ell * ell + 2.0 * (cf.P1(ix) + cf.P2(ix)).real();
}

double PairConjecture::density_integral(const DifferenceTestFunction& f, double ell, PairModel model) const {
  if (f.n != 2) throw Error(Errc::InvalidArgument, "pair conjecture needs n = 2");
  if (f.support > x_max_) throw Error(Errc::SupportTooWide, "test function support beyond the tabulated range");
  std::vector<double> terms(x_.size());
  double d[1];
  for (std::size_t i = 0; i < x_.size(); ++i) {
    d[0] = x_[i];
    double R;
    if (model == PairModel::SineKernel) {
      R = ell * ell * zeta::sine_kernel_limit(ell * x_[i] / kTwoPi);
    } else {
      R = ell * ell + 2.0 * (std::polar(1.0, -ell * x_[i]) * core1_[i] + p2_[i]).real();
    }
    terms[i] = w_[i] * R * f.f(std::span<const double>(d, 1));
  }
  // f is even, so the integral over [-x_max, x_max] is twice this one
  return 2.0 * tree_sum(terms) / kTwoPi;
}

ConjectureSide PairConjecture::window_integral(const DifferenceTestFunction& f, Window window, int sub_windows,
                                               PairModel model) const {
  std::vector<double> gx, gw;
  gauss_legendre(kPanelNodes, gx, gw);
  ConjectureSide out;
  for (const auto& [lo, hi] : geometric_split(window, sub_windows)) {
    double acc = 0.0;
    for (int i = 0; i < kPanelNodes; ++i) {
      const double t = lo + 0.5 * (hi - lo) * (1.0 + gx[i]);
      acc += 0.5 * (hi - lo) * gw[i] * density_integral(f, std::log(t / kTwoPi), model) / kTwoPi;
    }
    out.sub_values.push_back(acc);
  }
  out.value = tree_sum(out.sub_values);
  return out;
}

}  // namespace ncorr::zeros
