#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/rmt.hpp"

using namespace ncorr;
using namespace ncorr::rmt;
using cplx = std::complex<double>;

namespace {

cplx zz(cplx x) { return 1.0 / (1.0 - std::exp(-x)); }

double SN(int N, double t) {
  if (std::abs(std::sin(t / 2)) < 1e-14) return N;
  return std::sin(N * t / 2) / std::sin(t / 2);
}

// Gaussian elimination with partial pivoting; n <= 6.
double det(std::vector<std::vector<double>> a) {
  const int n = int(a.size());
  double d = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) std::swap(a[piv], a[c]), d = -d;
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

double sine_det(const std::vector<double>& th, int N) {
  std::vector<std::vector<double>> m(th.size(), std::vector<double>(th.size()));
  for (std::size_t j = 0; j < th.size(); ++j)
    for (std::size_t k = 0; k < th.size(); ++k) m[j][k] = SN(N, th[j] - th[k]);
  return det(m);
}

}  // namespace

TEST(Correlation, OnePointIsN) {
  for (int N : {1, 5, 40}) {
    const double th[] = {1.234};
    EXPECT_NEAR(correlation_rmt(th, N), N, 1e-12 * N);
  }
}

TEST(Correlation, PairClosedForm) {
  for (int N : {2, 7, 30})
    for (double t : {0.05, 0.4, 1.7, 3.0}) {
      const double th[] = {0.3, 0.3 + t};
      const double ref = N * N - SN(N, t) * SN(N, t);
      EXPECT_NEAR(correlation_rmt(th, N), ref, 1e-9 * N * N) << N << " " << t;
    }
}

class DeterminantProperty : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(DeterminantProperty, MatchesSineKernelDeterminant) {
  const auto [n, N] = GetParam();
  std::mt19937_64 rng(1000 * n + N);
  for (int rep = 0; rep < 10; ++rep) {
    const auto th = random_separated_angles(n, 0.05, rng);
    const double ref = sine_det(th, N);
    const double got = correlation_rmt(th, N);
    EXPECT_NEAR(got, ref, 1e-9 * std::pow(double(N), n)) << "n=" << n << " N=" << N;
    EXPECT_NEAR(determinant_oracle(th, N), ref, 1e-10 * std::pow(double(N), n));
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, DeterminantProperty,
                         ::testing::Values(std::pair{2, 3}, std::pair{2, 20}, std::pair{3, 4}, std::pair{3, 12},
                                           std::pair{4, 5}, std::pair{4, 10}));

TEST(Correlation, CollisionRejectedUnlessProbing) {
  const double th[] = {0.5, 0.5 + 1e-9};
  try {
    correlation_rmt(th, 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PoleCollision);
  }
  const double far[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  EXPECT_THROW(correlation_rmt(far, 4), Error);
}

TEST(Jstar, OneByOneClosedForm) {
  for (int N : {1, 3, 10}) {
    const cplx a(0.2, 0.3), b(0.1, -0.7);
    const cplx x = a + b;
    const cplx ref = num::z_logderiv_prime(x) + std::exp(-double(N) * x) * zz(x) * zz(-x);
    const std::vector<cplx> A{a}, B{b};
    EXPECT_NEAR(std::abs(jstar(A, B, N) - ref), 0.0, 1e-13);
  }
}

TEST(Jstar, OneSidedAveragesVanish) {
  const std::vector<cplx> A{cplx(0.2, 0.3), cplx(0.1, 1.0)}, none;
  EXPECT_NEAR(std::abs(jstar(A, none, 6)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(jstar(none, none, 6) - 1.0), 0.0, 1e-15);
}

TEST(Jstar, ConjugationAndSwapSymmetry) {
  const std::vector<cplx> A{cplx(0.1, 0.3), cplx(0.05, -0.9)}, B{cplx(0.2, 0.4), cplx(-0.02, 1.3)};
  std::vector<cplx> Ac, Bc;
  for (auto a : A) Ac.push_back(std::conj(a));
  for (auto b : B) Bc.push_back(std::conj(b));
  const cplx j = jstar(A, B, 7);
  EXPECT_NEAR(std::abs(jstar(Ac, Bc, 7) - std::conj(j)), 0.0, 1e-11 * std::abs(j));
  EXPECT_NEAR(std::abs(jstar(B, A, 7) - j), 0.0, 1e-11 * std::abs(j));
}

TEST(Jstar, MixedDerivativeOfRatio) {
  // J*(a1, a2; b) as the third mixed derivative of the ratio average at C = A, D = B.
  const int N = 4;
  const cplx a1(0.3, 0.2), a2(0.25, -0.5), b(0.35, 0.1);
  const double h = 2e-3;
  cplx fd = 0.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const std::vector<cplx> A{a1, a2}, B{b}, C{a1 + double(s1) * h, a2 + double(s2) * h}, D{b + double(s3) * h};
        fd += double(s1 * s2 * s3) * ratios_average(A, B, C, D, N);
      }
  fd /= 8 * h * h * h;
  const std::vector<cplx> A{a1, a2}, B{b};
  const cplx j = jstar(A, B, N);
  // d/dgamma of 1/Lambda(e^{-gamma}) contributes one sign per derivative.
  EXPECT_NEAR(std::abs(fd + j), 0.0, 1e-4 * std::max(1.0, std::abs(j)));
}

TEST(Jstar, PairedPerturbationLimit) {
  const std::vector<cplx> Aeq{cplx(0.2, 0.3), cplx(0.2, 0.3)}, B{cplx(0.1, -0.4)};
  JstarOptions opt;
  EXPECT_THROW(jstar(Aeq, B, 5, opt), Error);
  opt.paired_perturbation = true;
  const cplx lim = jstar(Aeq, B, 5, opt);
  const double eps = 1e-4;
  const std::vector<cplx> Anear{cplx(0.2 - eps, 0.3), cplx(0.2 + eps, 0.3)};
  EXPECT_NEAR(std::abs(lim - jstar(Anear, B, 5)), 0.0, 1e-5 * std::abs(lim));
}

TEST(Jstar, OppositeCollisionRejected) {
  const std::vector<cplx> A{cplx(0.0, 0.3)}, B{cplx(0.0, -0.3)};
  try {
    jstar(A, B, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PoleCollision);
  }
}

TEST(RatiosAverage, SecondMomentOfCharPoly) {
  for (int N : {1, 4, 9}) {
    const cplx a(0.01, 0.02), b(0.03, -0.02);
    const std::vector<cplx> A{a}, B{b}, none;
    const cplx x = a + b;
    const cplx ref = (1.0 - std::exp(-double(N + 1) * x)) / (1.0 - std::exp(-x));
    EXPECT_NEAR(std::abs(ratios_average(A, B, none, none, N) - ref), 0.0, 1e-12 * N);
  }
  const std::vector<cplx> tiny_a{1e-7}, tiny_b{1e-7}, none;
  EXPECT_NEAR(ratios_average(tiny_a, tiny_b, none, none, 6).real(), 7.0, 1e-4);
}

TEST(RatiosAverage, TwoTermFormula) {
  const int N = 5;
  const cplx al(0.1, 0.4), be(0.2, -0.3), ga(0.3, 0.1), de(0.15, 0.6);
  const cplx ref = zz(al + be) * zz(ga + de) / (zz(al + de) * zz(be + ga)) +
                   std::exp(-double(N) * (al + be)) * zz(-al - be) * zz(ga + de) / (zz(de - be) * zz(ga - al));
  const std::vector<cplx> A{al}, B{be}, C{ga}, D{de};
  EXPECT_NEAR(std::abs(ratios_average(A, B, C, D, N) - ref), 0.0, 1e-13);
}

TEST(RatiosAverage, NearlyTrivialRatioIsOne) {
  // C = A, D = B exactly is a removable singularity of the expansion.
  const std::vector<cplx> A{cplx(0.2, 0.1)}, B{cplx(0.3, -0.2)}, C{cplx(0.2 + 1e-7, 0.1)}, D{cplx(0.3 + 1e-7, -0.2)};
  EXPECT_NEAR(std::abs(ratios_average(A, B, C, D, 4) - 1.0), 0.0, 1e-6);
}

TEST(RatiosAverage, SideConditions) {
  const std::vector<cplx> A{0.1}, B{0.1}, bad{cplx(-0.1, 0.0)}, none;
  const std::vector<cplx> many{0.1, 0.2, 0.3};
  for (auto f : {std::function<void()>([&] { ratios_average(A, B, bad, B, 3); }),
                 std::function<void()>([&] { ratios_average(none, none, many, none, 2); })}) {
    try {
      f();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::SideConditionViolated);
    }
  }
}

TEST(Residue, SimplePoleCarriesN) {
  for (int N : {2, 6}) {
    const std::vector<cplx> a{cplx(0.1, 0.2)}, b{cplx(-0.1, -0.2)};
    const auto A = comb::make_shifts(a, comb::Side::Alpha, 0);
    const auto B = comb::make_shifts(b, comb::Side::Beta, 1);
    const auto r = residue_check(A, B, 0, 1, N);
    EXPECT_NEAR(std::abs(r.lhs - double(N)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(r.double_pole), 0.0, 1e-10);
    EXPECT_LT(r.abs_error, 1e-10);
  }
}

TEST(Residue, LargerSets) {
  const std::vector<cplx> a{cplx(0.1, 0.2), cplx(0.05, 1.1)}, b{cplx(-0.1, -0.2), cplx(0.2, 0.5)};
  const auto A = comb::make_shifts(a, comb::Side::Alpha, 0);
  const auto B = comb::make_shifts(b, comb::Side::Beta, 2);
  const auto r = residue_check(A, B, 0, 2, 5);
  EXPECT_LT(r.abs_error, 1e-9 * std::max(1.0, std::abs(r.rhs)));
  EXPECT_LT(std::abs(r.double_pole), 1e-9 * std::max(1.0, std::abs(r.rhs)));
}
