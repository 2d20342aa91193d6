#pragma once

#include <complex>

namespace ncorr {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kEulerGamma = 0.57721566490153286061;

namespace num {

// exp(x) - 1 without cancellation for small |x|.
cplx expm1(cplx x);

// z(x) = 1 / (1 - e^{-x}) and its logarithmic derivatives. All three have
// poles at x in 2*pi*i*Z; those throw Error{PoleAtZero} carrying the Laurent
// coefficients at the offending point.
cplx z(cplx x);
cplx z_logderiv(cplx x);        // z'/z(x)  = -1/(e^x - 1)
cplx z_logderiv_prime(cplx x);  // (z'/z)'(x) = e^x / (e^x - 1)^2

inline constexpr double kPoleTol = 1e-12;

// sin(N theta / 2) / sin(theta / 2), continuous at theta in 2*pi*Z.
double sine_kernel(int N, double theta);

struct ZetaParams {
  int direct_terms = 64;        // Euler-Maclaurin split point M (raised with |s|)
  int em_order = 12;            // number of Bernoulli correction terms
  double tol = 1e-15;           // relative truncation target
  double laurent_radius = 0.1;  // |s - 1| below which the Stieltjes series is used
  double max_imag = 1e3;
  int max_direct_terms = 1 << 18;
};

// zeta and its first two derivatives at s.
struct ZetaJet {
  cplx value, d1, d2;
};

ZetaJet zeta_jet(cplx s, const ZetaParams& p = {});
cplx zeta(cplx s, const ZetaParams& p = {});
cplx zeta_logderiv(cplx s, const ZetaParams& p = {});
cplx zeta_logderiv_prime(cplx s, const ZetaParams& p = {});

// Stieltjes constants gamma_0..gamma_10 used for the expansion at s = 1.
const double* stieltjes_constants();
inline constexpr int kStieltjesCount = 11;

// Gamma-function helpers, valid away from the non-positive integers.
cplx digamma(cplx w);
cplx log_gamma(cplx w);
cplx log_cos(cplx w);
cplx tan_stable(cplx w);

// chi(s) from zeta(s) = chi(s) zeta(1 - s), with 1/chi(s) = 2 (2 pi)^{-s} Gamma(s) cos(pi s / 2).
cplx log_chi(cplx s);
cplx chi(cplx s);
cplx chi_logderiv(cplx s);
// Leading-order replacement chi'/chi(1/2 + it) ~ -log(|t| / 2 pi).
double chi_logderiv_approx(double t);

}  // namespace num
}  // namespace ncorr
