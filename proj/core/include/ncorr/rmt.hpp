#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ncorr/combinat.hpp"

namespace ncorr::rmt {

using cplx = std::complex<double>;
using comb::ShiftSet;

inline constexpr double kCollisionTol = 1e-6;

// Average over U(N) of prod Lambda_X(e^{-alpha}) prod Lambda_{X*}(e^{-beta}) divided
// by prod Lambda_X(e^{-gamma}) prod Lambda_{X*}(e^{-delta}).
// Requires Re gamma, Re delta > 0, |C| <= |A| + N and |D| <= |B| + N.
cplx ratios_average(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                    std::span<const cplx> D, int N);

struct JstarOptions {
  double collision_tol = kCollisionTol;
  // Same-side shifts closer than collision_tol are spread symmetrically by
  // +-delta and +-2 delta and the two results Richardson-combined.
  bool paired_perturbation = false;
  double perturbation = 1e-3;
};

// Average of prod (Lambda'/Lambda)(e^{-alpha}) prod (Lambda*'/Lambda*)(e^{-beta}),
// in the normalization where J*(a; b) = (z'/z)'(a+b) + e^{-N(a+b)} z(a+b) z(-a-b).
cplx jstar(const ShiftSet& A, const ShiftSet& B, int N, const JstarOptions& opt = {});
cplx jstar(std::span<const cplx> A, std::span<const cplx> B, int N, const JstarOptions& opt = {});

struct CorrelationOptions {
  double collision_tol = kCollisionTol;
  // Allow angles closer than collision_tol (used when probing the diagonal).
  bool near_collision_probe = false;
};

// n-point correlation density of CUE eigenangles assembled from J*:
//   sum over K+L+M = {1..n} of N^{|M|} J*(-i theta_K; i theta_L).
double correlation_rmt(std::span<const double> thetas, int N, const CorrelationOptions& opt = {});

// det [S_N(theta_j - theta_k)]
double determinant_oracle(std::span<const double> thetas, int N);

struct LaurentProbe {
  double radius = 1e-2;
  int nodes = 64;
};

struct ResidueReport {
  cplx lhs;          // contour-extracted coefficient of 1/(alpha* + beta*)
  cplx rhs;          // N J*(A';B') + J*(A';B) + J*(A' + {-beta*}; B')
  cplx double_pole;  // coefficient of 1/(alpha* + beta*)^2
  double abs_error;
};

// Contour coefficients c_{-1}, c_{-2} of f around `center`, sampled on a circle.
template <class F>
std::pair<cplx, cplx> laurent_coefficients(F&& f, cplx center, const LaurentProbe& probe);

ResidueReport residue_check(const ShiftSet& A, const ShiftSet& B, int star_a, int star_b, int N,
                            const LaurentProbe& probe = {});

// Uniformly random angles in [0, 2 pi) with circular separation >= min_sep.
template <class Rng>
std::vector<double> random_separated_angles(int n, double min_sep, Rng& rng);

}  // namespace ncorr::rmt

#include "ncorr/detail/rmt_inl.hpp"
