#include "ncorr/numerics.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ncorr/error.hpp"

namespace ncorr::num {

namespace {

constexpr cplx I{0.0, 1.0};

// B_{2k}, k = 1..15.
constexpr std::array<double, 15> kBernoulli2k = {
    1.0 / 6.0,           -1.0 / 30.0,           1.0 / 42.0,           -1.0 / 30.0,
    5.0 / 66.0,          -691.0 / 2730.0,       7.0 / 6.0,            -3617.0 / 510.0,
    43867.0 / 798.0,     -174611.0 / 330.0,     854513.0 / 138.0,     -236364091.0 / 2730.0,
    8553103.0 / 6.0,     -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

constexpr std::array<double, kStieltjesCount> kStieltjes = {
    0.57721566490153286061,    -0.072815845483676724861, -0.0096903631928723184845,
    0.0020538344203033458662,  0.0023253700654673000575, 0.00079332381730106270175,
    -0.00023876934543019960987, -0.00052728956705775104607, -0.00035212335380303950960,
    -0.000034394774418088048178, 0.00020533281490906479468};

// Value and first two derivatives with respect to s.
struct Jet {
  cplx v, d1, d2;
};

Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2}; }
Jet operator/(const Jet& a, const Jet& b) {
  const cplx q = a.v / b.v;
  const cplx q1 = (a.d1 - q * b.d1) / b.v;
  const cplx q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}
// exp(-s log m) as a jet in s.
Jet power_jet(double log_m, cplx s) {
  const cplx v = std::exp(-s * log_m);
  return {v, -log_m * v, log_m * log_m * v};
}

// x zeta(1 + x) from the Stieltjes expansion, as a jet in x.
Jet stieltjes_regular(cplx x) {
  // f(x) = 1 + sum_n c_n x^{n+1},  c_n = (-1)^n gamma_n / n!
  Jet f{1.0, 0.0, 0.0};
  cplx xnm1 = 0.0;  // x^{n-1}
  cplx xn = 1.0;    // x^n
  double fact = 1.0;
  for (int n = 0; n < kStieltjesCount; ++n) {
    if (n > 0) fact *= n;
    const double c = ((n % 2) ? -1.0 : 1.0) * kStieltjes[n] / fact;
    f.v += c * xn * x;
    f.d1 += c * double(n + 1) * xn;
    f.d2 += c * double(n + 1) * double(n) * xnm1;
    xnm1 = (n == 0) ? cplx(1.0) : xnm1 * x;
    xn *= x;
  }
  return f;
}

void check_zeta_domain(cplx s, const ZetaParams& p) {
  if (!(std::isfinite(s.real()) && std::isfinite(s.imag())))
    throw Error(Errc::DomainError, "non-finite zeta argument");
  if (std::abs(s - 1.0) < kPoleTol) {
    LaurentData ld{1.0, 1, {1.0, kStieltjes[0]}};
    throw Error(Errc::PoleAtOne, "zeta pole at s = 1", ld);
  }
  if (s.real() <= 0.0) throw Error(Errc::DomainError, "zeta evaluator requires Re s > 0");
  if (std::abs(s.imag()) > p.max_imag) throw Error(Errc::DomainError, "|Im s| above the configured guard");
}

Jet zeta_em(cplx s, const ZetaParams& p) {
  const int K = std::min<int>(p.em_order, static_cast<int>(kBernoulli2k.size()) - 1);
  int M = std::max(p.direct_terms, static_cast<int>(std::ceil((std::abs(s) + 2.0 * K) / kPi)));
  for (;;) {
    Jet acc{0.0, 0.0, 0.0};
    for (int n = 1; n < M; ++n) acc = acc + power_jet(std::log(double(n)), s);
    const double lm = std::log(double(M));
    const Jet m_s = power_jet(lm, s);  // M^{-s}
    const Jet m_1s{double(M) * m_s.v, double(M) * m_s.d1, double(M) * m_s.d2};
    acc = acc + m_1s / Jet{s - 1.0, 1.0, 0.0};
    acc = acc + 0.5 * m_s;
    Jet poch{s, 1.0, 0.0};
    double fact = 2.0;  // (2k)!
    double mpow = 1.0 / double(M);  // M^{1-2k}
    cplx next_term = 0.0;
    for (int k = 1; k <= K + 1; ++k) {
      const double c = kBernoulli2k[k - 1] / fact * mpow;
      const Jet term = c * (poch * m_s);
      if (k <= K) {
        acc = acc + term;
      } else {
        next_term = term.v;
      }
      poch = poch * Jet{s + double(2 * k - 1), 1.0, 0.0} * Jet{s + double(2 * k), 1.0, 0.0};
      fact *= double(2 * k + 1) * double(2 * k + 2);
      mpow /= double(M) * double(M);
    }
    if (std::abs(next_term) <= p.tol * std::max(1e-300, std::abs(acc.v)) || M >= p.max_direct_terms) return acc;
    M *= 2;
  }
}

void check_z_pole(cplx x, LaurentData ld, const char* what) {
  const double k = std::round(x.imag() / kTwoPi);
  const cplx loc{0.0, kTwoPi * k};
  if (std::abs(x - loc) < kPoleTol) {
    ld.location = loc;
    throw Error(Errc::PoleAtZero, std::string(what) + " pole at 2 pi i k", std::move(ld));
  }
}

}  // namespace

const double* stieltjes_constants() { return kStieltjes.data(); }

cplx expm1(cplx x) {
  const double a = x.real(), b = x.imag();
  const double sh = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b)};
}

cplx z(cplx x) {
  check_z_pole(x, {0.0, 1, {1.0, 0.5}}, "z");
  return -1.0 / expm1(-x);
}

cplx z_logderiv(cplx x) {
  check_z_pole(x, {0.0, 1, {-1.0, 0.5}}, "z'/z");
  return -1.0 / expm1(x);
}

cplx z_logderiv_prime(cplx x) {
  check_z_pole(x, {0.0, 2, {1.0, 0.0, -1.0 / 12.0}}, "(z'/z)'");
  return 1.0 / (expm1(x) * -expm1(-x));
}

double sine_kernel(int N, double theta) {
  const double e = std::remainder(theta, kTwoPi);
  const long k = std::lround((theta - e) / kTwoPi);
  // S_N(theta + 2 pi k) = (-1)^{k (N - 1)} S_N(theta)
  const double sign = ((k * (N - 1)) % 2 == 0) ? 1.0 : -1.0;
  if (std::abs(e) < 1e-7) {
    const double n2 = double(N) * double(N);
    return sign * N * (1.0 - (n2 - 1.0) * e * e / 24.0);
  }
  return sign * std::sin(0.5 * N * e) / std::sin(0.5 * e);
}

ZetaJet zeta_jet(cplx s, const ZetaParams& p) {
  check_zeta_domain(s, p);
  const cplx x = s - 1.0;
  if (std::abs(x) < p.laurent_radius) {
    const Jet q = stieltjes_regular(x) / Jet{x, 1.0, 0.0};
    return {q.v, q.d1, q.d2};
  }
  const Jet j = zeta_em(s, p);
  return {j.v, j.d1, j.d2};
}

cplx zeta(cplx s, const ZetaParams& p) { return zeta_jet(s, p).value; }

cplx zeta_logderiv(cplx s, const ZetaParams& p) {
  check_zeta_domain(s, p);
  const cplx x = s - 1.0;
  if (std::abs(x) < p.laurent_radius) {
    const Jet f = stieltjes_regular(x);
    return f.d1 / f.v - 1.0 / x;
  }
  const Jet j = zeta_em(s, p);
  if (std::abs(j.v) < 1e-13) throw Error(Errc::ZeroDenominator, "zeta vanishes at the argument");
  return j.d1 / j.v;
}

cplx zeta_logderiv_prime(cplx s, const ZetaParams& p) {
  check_zeta_domain(s, p);
  const cplx x = s - 1.0;
  if (std::abs(x) < p.laurent_radius) {
    const Jet f = stieltjes_regular(x);
    const cplx r = f.d1 / f.v;
    return f.d2 / f.v - r * r + 1.0 / (x * x);
  }
  const Jet j = zeta_em(s, p);
  if (std::abs(j.v) < 1e-13) throw Error(Errc::ZeroDenominator, "zeta vanishes at the argument");
  const cplx r = j.d1 / j.v;
  return j.d2 / j.v - r * r;
}

namespace {

void check_gamma_pole(cplx w) {
  const double n = std::round(w.real());
  if (n <= 0.0 && std::abs(w - n) < kPoleTol) throw Error(Errc::PoleOfGamma, "Gamma pole at non-positive integer");
}

}  // namespace

cplx tan_stable(cplx w) {
  if (w.imag() >= 0.0) {
    const cplx q = std::exp(2.0 * I * w);
    return I * (1.0 - q) / (1.0 + q);
  }
  const cplx q = std::exp(-2.0 * I * w);
  return -I * (1.0 - q) / (1.0 + q);
}

cplx log_cos(cplx w) {
  if (w.imag() > 0.0) return -I * w + std::log(1.0 + std::exp(2.0 * I * w)) - std::log(2.0);
  return I * w + std::log(1.0 + std::exp(-2.0 * I * w)) - std::log(2.0);
}

cplx digamma(cplx w) {
  check_gamma_pole(w);
  if (w.real() < 0.0) {
    // psi(w) = psi(1 - w) - pi cot(pi w)
    return digamma(1.0 - w) - kPi / tan_stable(kPi * w);
  }
  cplx acc = 0.0;
  while (w.real() < 20.0 && std::abs(w.imag()) < 20.0) {
    acc -= 1.0 / w;
    w += 1.0;
  }
  const cplx w2 = 1.0 / (w * w);
  cplx series = 0.0;
  cplx pw = w2;
  for (int k = 1; k <= 9; ++k) {
    series += kBernoulli2k[k - 1] / (2.0 * k) * pw;
    pw *= w2;
  }
  return acc + std::log(w) - 0.5 / w - series;
}

cplx log_gamma(cplx w) {
  check_gamma_pole(w);
  if (w.real() < 0.0) {
    // log Gamma(w) = log pi - log sin(pi w) - log Gamma(1 - w), modulo 2 pi i
    return std::log(kPi) - log_cos(kPi * w - 0.5 * kPi) - log_gamma(1.0 - w);
  }
  cplx acc = 0.0;
  while (w.real() < 20.0 && std::abs(w.imag()) < 20.0) {
    acc -= std::log(w);
    w += 1.0;
  }
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx pw = inv;
  for (int k = 1; k <= 9; ++k) {
    series += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return acc + (w - 0.5) * std::log(w) - w + 0.5 * std::log(kTwoPi) + series;
}

namespace {

void check_chi_pole(cplx s) {
  check_gamma_pole(s);
  const double n = std::round(s.real());
  if (n >= 1.0 && std::fmod(n, 2.0) == 1.0 && std::abs(s - n) < kPoleTol)
    throw Error(Errc::PoleOfGamma, "chi pole at odd positive integer");
}

}  // namespace

cplx log_chi(cplx s) {
  check_chi_pole(s);
  return -(std::log(2.0) - s * std::log(kTwoPi) + log_gamma(s) + log_cos(0.5 * kPi * s));
}

cplx chi(cplx s) { return std::exp(log_chi(s)); }

cplx chi_logderiv(cplx s) {
  check_chi_pole(s);
  return std::log(kTwoPi) - digamma(s) + 0.5 * kPi * tan_stable(0.5 * kPi * s);
}

double chi_logderiv_approx(double t) { return -std::log(std::abs(t) / kTwoPi); }

}  // namespace ncorr::num
