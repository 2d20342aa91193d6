#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ncorr/error.hpp"
#include "ncorr/primes.hpp"

using namespace ncorr;
using namespace ncorr::primes;
using cplx = std::complex<double>;

namespace {

cplx pw(double p, cplx x) { return std::exp(-x * std::log(p)); }  // p^{-x}

template <class F>
void expect_code(F&& f, Errc code) {
  try {
    f();
    ADD_FAILURE() << "no exception, expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Sieve, SmallAndCounts) {
  EXPECT_EQ(sieve(30), (std::vector<int>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(sieve(100000).size(), 9592u);
  EXPECT_TRUE(sieve(1).empty());
}

TEST(PrimeContext, CutoffGuardAndNone) {
  expect_code([] { PrimeContext::build(7); }, Errc::CutoffTooSmall);
  const auto ctx = PrimeContext::build(101);
  EXPECT_EQ(ctx.primes().size(), 26u);
  EXPECT_TRUE(PrimeContext::none().empty());
}

TEST(LocalZeta, DefinitionsAgree) {
  const cplx x(0.7, 0.3);
  for (double p : {2.0, 3.0, 101.0}) {
    EXPECT_NEAR(std::abs(zp(p, x) - 1.0 / (1.0 - pw(p, x))), 0.0, 1e-15);
    // logarithmic derivative by central difference
    const double h = 1e-5;
    const cplx fd = (std::log(zp(p, x + h)) - std::log(zp(p, x - h))) / (2 * h);
    EXPECT_NEAR(std::abs(zp_logderiv(p, x) - fd), 0.0, 1e-8);
    const cplx fd2 = (zp_logderiv(p, x + h) - zp_logderiv(p, x - h)) / (2 * h);
    EXPECT_NEAR(std::abs(zp_logderiv_prime(p, x) - fd2), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(zpt(p, 0.0, x) - zp(p, x)), 0.0, 1e-15);
  }
}

TEST(LocalFactor, SingleNumeratorEntry) {
  const std::vector<cplx> A{0.1};
  EXPECT_NEAR(local_factor(2.0, 0.0, A, {}, {}, {}).real(), 1.0 / (1.0 - std::pow(2.0, -0.6)), 1e-13);
  EXPECT_NEAR(local_factor(2.0, 0.0, A, {}, {}, {}).real(), 2.939050, 1e-6);
}

TEST(LocalFactor, PoleSignalled) {
  expect_code([] { zpt(2.0, 0.0, 0.0); }, Errc::LocalPole);
}

TEST(ClosedFormTerms, SeriesOracles) {
  const auto ctx = PrimeContext::build(97, TailPolicy::None);
  const cplx x(0.11, 0.2), y(-0.05, -0.3);
  cplx B = 0, Q = 0, A = 1;
  for (int p : ctx.primes()) {
    const double lp = std::log(double(p));
    cplx s = 0;
    for (int m = 1; m < 80; ++m) s += lp * pw(p, double(m) * (1.0 + x));
    B += s * s;
    cplx q = 0;
    for (int m = 1; m < 80; ++m)
      for (int n = 1; n < 80; ++n) q += pw(p, double(m) * (1.0 + x) + double(n) * (1.0 + y));
    Q += -lp * lp * lp * q;
    const double ip = 1.0 / p;
    const cplx u = pw(p, 1.0 + x);
    A *= (1.0 - u) * (1.0 - 2.0 * ip + u) / ((1.0 - ip) * (1.0 - ip));
  }
  const std::vector<cplx> one{x}, two{x, y};
  EXPECT_NEAR(std::abs(closed_form_prime_term(PrimeTerm::B, one, ctx).value - B), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(closed_form_prime_term(PrimeTerm::Q, two, ctx).value - Q), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(closed_form_prime_term(PrimeTerm::A, one, ctx).value - A), 0.0, 1e-12);
}

TEST(ClosedFormTerms, ProductAtOriginIsOne) {
  const auto ctx = PrimeContext::build(10007);
  const std::vector<cplx> zero{0.0};
  EXPECT_NEAR(std::abs(closed_form_prime_term(PrimeTerm::A, zero, ctx).value - 1.0), 0.0, 1e-12);
}

TEST(ClosedFormTerms, Quad13Series) {
  const auto ctx = PrimeContext::build(31, TailPolicy::None);
  const cplx a(0.05, 0.1), b1(0.02, -0.2), b2(-0.03, 0.4), b3(0.01, 0.0);
  cplx ref = 0;
  for (int p : ctx.primes()) {
    const double lp = std::log(double(p));
    cplx g[3] = {0, 0, 0};
    const cplx bs[3] = {b1, b2, b3};
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 60; ++m) g[j] += pw(p, double(m) * (1.0 + a + bs[j]));
    ref += std::pow(lp, 4) * g[0] * g[1] * g[2] * pw(p, 3.0 + 3.0 * a + b1 + b2 + b3);
  }
  const std::vector<cplx> args{a, b1, b2, b3};
  EXPECT_NEAR(std::abs(closed_form_prime_term(PrimeTerm::Quad13, args, ctx).value - ref), 0.0, 1e-12);
}

TEST(ClosedFormTerms, AstarLocalTendsToOne) {
  const std::vector<cplx> args{cplx(0.01, 0.3), cplx(-0.02, -0.7), cplx(0.03, 0.5), cplx(0.0, -0.2)};
  double prev = 1e9;
  for (double p : {1009.0, 10007.0, 100003.0}) {
    const double d = std::abs(prime_term_local(PrimeTerm::AStar, p, args) - 1.0);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(ClosedFormTerms, TailCorrectedSumStable) {
  const std::vector<cplx> zero{0.0};
  const auto v1 = closed_form_prime_term(PrimeTerm::B, zero, PrimeContext::build(100000));
  const auto v2 = closed_form_prime_term(PrimeTerm::B, zero, PrimeContext::build(200000));
  const double raw = std::abs(v2.value - v1.value);
  const double corrected = std::abs((v2.value.real() + v2.tail_estimate) - (v1.value.real() + v1.tail_estimate));
  EXPECT_GT(v1.tail_estimate, 0.0);
  EXPECT_LT(corrected, raw);
  EXPECT_LT(corrected / std::abs(v2.value), 1e-6);
}

TEST(ClosedFormTerms, ArityAndStripErrors) {
  const auto ctx = PrimeContext::build(11);
  const std::vector<cplx> two{0.1, 0.1}, one_far{0.6}, four_far{0.3, 0.0, 0.0, 0.0};
  expect_code([&] { closed_form_prime_term(PrimeTerm::B, two, ctx); }, Errc::ArityMismatch);
  expect_code([&] { closed_form_prime_term(PrimeTerm::A, one_far, ctx); }, Errc::StripViolation);
  expect_code([&] { closed_form_prime_term(PrimeTerm::B3, four_far, ctx); }, Errc::StripViolation);
}

TEST(ArithmeticFactor, FourierOracle) {
  // int (1 - c u)(1 - d/u) / ((1 - a u)(1 - b/u)) = 1 + (a - c)(b - d) / (1 - a b)
  const auto ctx = PrimeContext::build(13, TailPolicy::None);
  const cplx al(0.1, 0.2), be(0.05, -0.1), ga(0.2, 0.0), de(0.15, 0.3);
  cplx ref = 1.0;
  for (int p : ctx.primes()) {
    const cplx a = pw(p, 0.5 + al), b = pw(p, 0.5 + be), c = pw(p, 0.5 + ga), d = pw(p, 0.5 + de);
    const cplx integral = 1.0 + (a - c) * (b - d) / (1.0 - a * b);
    auto Z = [&](cplx u, cplx v) { return 1.0 - pw(p, 1.0 + u + v); };
    ref *= Z(al, be) * Z(ga, de) / (Z(al, de) * Z(be, ga)) * integral;
  }
  const std::vector<cplx> A{al}, B{be}, C{ga}, D{de};
  const auto got = arithmetic_factor(A, B, C, D, ctx, ThetaQuadrature{});
  EXPECT_NEAR(std::abs(got.value - ref), 0.0, 1e-12);
}

TEST(LocalMoments, EmptyAndMixedPair) {
  using comb::Side;
  const comb::ShiftSet none;
  const auto lm0 = local_moments(3.0, none, none, none, ThetaQuadrature{});
  EXPECT_NEAR(std::abs(lm0.integral - 1.0), 0.0, 1e-14);
  ASSERT_EQ(lm0.moment.size(), 1u);

  const std::vector<cplx> wa{cplx(0.1, 0.2)}, wb{cplx(0.05, -0.3)};
  auto W = comb::make_shifts(wa, Side::Alpha, 0);
  const auto Wb = comb::make_shifts(wb, Side::Beta, 1);
  W.insert(W.end(), Wb.begin(), Wb.end());
  const double p = 5.0, lp = std::log(p);
  const auto lm = local_moments(p, none, none, W, ThetaQuadrature{});
  EXPECT_NEAR(std::abs(lm.moment[1]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(lm.moment[2]), 0.0, 1e-13);
  const cplx q = pw(p, 1.0 + wa[0] + wb[0]);
  EXPECT_NEAR(std::abs(lm.moment[3] - lp * lp * q / (1.0 - q)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(cumulant_from_moments(3u, lm.moment) - lm.moment[3]), 0.0, 1e-13);
}

TEST(LocalMoments, CumulantOfThreeFromMoments) {
  // k3 = m123 - m12 m3 - m13 m2 - m23 m1 + 2 m1 m2 m3
  std::vector<cplx> m(8);
  for (int i = 0; i < 8; ++i) m[i] = cplx(0.3 * i + 0.1, -0.07 * i * i);
  m[0] = 1.0;
  const cplx k3 = m[7] - m[3] * m[4] - m[5] * m[2] - m[6] * m[1] + 2.0 * m[1] * m[2] * m[4];
  EXPECT_NEAR(std::abs(cumulant_from_moments(7u, m) - k3), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cumulant_from_moments(2u, m) - m[2]), 0.0, 1e-15);
}

TEST(LocalMoments, StartingNodeCountIrrelevant) {
  using comb::Side;
  const std::vector<cplx> s{cplx(0.02, 0.4)}, t{cplx(-0.01, 0.9)}, w{cplx(0.03, -0.5), cplx(0.0, 0.2)};
  const auto S = comb::make_shifts(s, Side::Alpha, 0);
  const auto T = comb::make_shifts(t, Side::Beta, 10);
  auto W = comb::make_shifts(std::span<const cplx>(w.data(), 1), Side::Alpha, 1);
  const auto Wb = comb::make_shifts(std::span<const cplx>(w.data() + 1, 1), Side::Beta, 11);
  W.insert(W.end(), Wb.begin(), Wb.end());
  ThetaQuadrature q1, q2;
  q1.nodes = 32;
  q2.nodes = 1024;
  const auto a = local_moments(2.0, S, T, W, q1);
  const auto b = local_moments(2.0, S, T, W, q2);
  EXPECT_GE(a.nodes_used, 64);
  for (std::size_t k = 0; k < a.moment.size(); ++k) EXPECT_NEAR(std::abs(a.moment[k] - b.moment[k]), 0.0, 1e-11);
}

TEST(LocalMoments, BadNodeCount) {
  ThetaQuadrature q;
  q.nodes = 100;
  const comb::ShiftSet none;
  expect_code([&] { local_moments(2.0, none, none, none, q); }, Errc::InvalidArgument);
}
