#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ncorr/error.hpp"
#include "ncorr/rmt.hpp"
#include "ncorr/zeta.hpp"

using namespace ncorr;
using namespace ncorr::zeta;
using cplx = std::complex<double>;
using comb::Side;

namespace {

struct Fixture {
  primes::PrimeContext ctx = primes::PrimeContext::build(101);
  EngineConfig cfg() const {
    EngineConfig c;
    c.primes = &ctx;
    return c;
  }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

ShiftSet alpha(std::vector<cplx> v, int base = 0) { return comb::make_shifts(v, Side::Alpha, base); }
ShiftSet beta(std::vector<cplx> v, int base = 10) { return comb::make_shifts(v, Side::Beta, base); }

std::vector<cplx> random_shifts(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> re(-0.04, 0.04), im(-2.0, 2.0);
  std::vector<cplx> v;
  for (int i = 0; i < k; ++i) v.emplace_back(re(rng), im(rng));
  return v;
}

}  // namespace

TEST(Height, ContextAndGuard) {
  const auto h = HeightContext::at(1e12);
  EXPECT_NEAR(h.ell, std::log(1e12 / (2 * M_PI)), 1e-12);
  EXPECT_THROW(HeightContext::at(5.0), Error);
  EXPECT_NEAR(HeightContext::from_ell(h.ell).t, 1e12, 1e-3);
}

TEST(XFactor, OppositeShiftsCancel) {
  const cplx a(0.1, 0.7);
  for (auto mode : {XMode::ExactChi, XMode::EllApprox}) {
    const auto h = HeightContext::at(1000.0, mode);
    EXPECT_NEAR(std::abs(x_factor(alpha({a}), beta({-a}), h) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(x_factor({}, {}, h) - 1.0), 0.0, 0.0);
  }
}

TEST(XFactor, ApproximationTracksExactChi) {
  const auto he = HeightContext::at(1e8, XMode::ExactChi);
  const auto ha = HeightContext::at(1e8, XMode::EllApprox);
  const auto S = alpha({cplx(0.0, 0.3)});
  const auto T = beta({cplx(0.0, 0.5)});
  EXPECT_NEAR(std::abs(x_factor(S, T, he) - x_factor(S, T, ha)), 0.0, 1e-6);
}

TEST(Degeneration, NoPrimesReproducesUnitaryFormula) {
  const auto none = primes::PrimeContext::none();
  std::mt19937_64 rng(7);
  for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}, std::pair{0, 2}}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto A = alpha(random_shifts(rng, a));
      const auto B = beta(random_shifts(rng, b));
      for (int N : {3, 12}) {
        const cplx g = jstar_general(A, B, {}, RmtFamily(N), none, primes::ThetaQuadrature{});
        const cplx r = rmt::jstar(A, B, N);
        EXPECT_NEAR(std::abs(g - r), 0.0, 1e-12 * std::max(1.0, std::abs(r))) << a << "," << b;
      }
    }
  }
}

class EngineEquivalence : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(EngineEquivalence, ClosedFormsMatchGeneralMachinery) {
  const auto [a, b] = GetParam();
  const auto h = HeightContext::at(1e12);
  const auto cfg = fx().cfg();
  std::mt19937_64 rng(100 * a + b);
  for (int rep = 0; rep < 4; ++rep) {
    const auto A = alpha(random_shifts(rng, a));
    const auto B = beta(random_shifts(rng, b));
    const cplx c = jstar_zeta_closed(A, B, h, cfg);
    const cplx g = jstar_zeta_general(A, B, {}, h, cfg);
    EXPECT_NEAR(std::abs(c - g), 0.0, 1e-9 * std::max(1.0, std::abs(g))) << a << ";" << b;
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, EngineEquivalence,
                         ::testing::Values(std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{1, 3},
                                           std::pair{3, 1}, std::pair{2, 2}));

TEST(ClosedForms, RejectExactChi) {
  const auto h = HeightContext::at(1e6, XMode::ExactChi);
  try {
    jstar_zeta_closed(alpha({0.1}), beta({0.2}), h, fx().cfg());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidArgument);
  }
}

TEST(ClosedForms, TrivialShapes) {
  const auto h = HeightContext::at(1e6);
  EXPECT_NEAR(std::abs(jstar_zeta_closed({}, {}, h, fx().cfg()) - 1.0), 0.0, 0.0);
  EXPECT_NEAR(std::abs(jstar_zeta_closed(alpha({0.1}), {}, h, fx().cfg())), 0.0, 0.0);
}

TEST(ClosedForms, Quad13CarriesPositivePrimeSum) {
  // quad_1_3 minus its W1 terms is +Quad13; the sign is pinned by the general engine.
  const auto h = HeightContext::at(1e12);
  const ClosedForms cf(h.ell, fx().ctx);
  const cplx a(0.01, 0.4), b1(0.02, -0.3), b2(-0.01, 0.9), b3(0.0, -1.1);
  const cplx general = jstar_zeta_general(alpha({a}), beta({b1, b2, b3}), {}, h, fx().cfg());
  EXPECT_NEAR(std::abs(cf.quad_1_3(a, b1, b2, b3) - general), 0.0, 1e-9 * std::abs(general));
}

TEST(Tripartitions, ContributingCount) {
  EXPECT_EQ(contributing_tripartitions(1).size(), 1u);
  EXPECT_EQ(contributing_tripartitions(2).size(), 3u);
  EXPECT_EQ(contributing_tripartitions(3).size(), 13u);
  EXPECT_EQ(contributing_tripartitions(4).size(), 51u);
}

TEST(Correlation, OnePointIsDensity) {
  ZetaCorrelationRequest req;
  req.points = {0.3};
  req.height = HeightContext::at(1e10);
  req.config = fx().cfg();
  EXPECT_NEAR(correlation_zeta(req), req.height.ell, 1e-12 * req.height.ell);
}

TEST(Correlation, EnginesAgreeOnTriples) {
  ZetaCorrelationRequest req;
  req.points = {0.0, 0.37, 0.81};
  req.height = HeightContext::at(1e12);
  req.config = fx().cfg();
  const double c = correlation_zeta(req);
  req.engine = Engine::GeneralMachinery;
  const double g = correlation_zeta(req);
  EXPECT_NEAR(c, g, 1e-9 * std::abs(g));
}

TEST(Correlation, PairApproachesSineKernel) {
  const auto ctx = primes::PrimeContext::build(10007);
  ZetaCorrelationRequest req;
  req.height = HeightContext::at(1e12);
  req.config.primes = &ctx;
  const double ell = req.height.ell;
  for (double r : {0.5, 1.0, 1.5, 2.5}) {
    req.points = {0.0, 2 * M_PI * r / ell};
    EXPECT_NEAR(correlation_zeta(req) / (ell * ell), sine_kernel_limit(r), 2e-2) << r;
  }
}

TEST(Correlation, CollisionRejected) {
  ZetaCorrelationRequest req;
  req.points = {0.2, 0.2};
  req.height = HeightContext::at(1e8);
  req.config = fx().cfg();
  EXPECT_THROW(correlation_zeta(req), Error);
}

TEST(Residue, ApproximateModeSimplePole) {
  const auto h = HeightContext::at(1e9);
  const auto ctx = primes::PrimeContext::build(31);
  EngineConfig cfg;
  cfg.primes = &ctx;
  const auto A = alpha({cplx(0.02, 0.3)}, 0);
  const auto B = beta({cplx(-0.02, -0.3), cplx(0.01, 0.8)}, 1);
  const auto r = residue_check_zeta(A, B, {}, 0, 1, h, cfg);
  EXPECT_LT(r.abs_error, 1e-8 * std::max(1.0, std::abs(r.rhs)));
  EXPECT_LT(std::abs(r.double_pole), 1e-8 * std::max(1.0, std::abs(r.rhs)));
}

TEST(SineKernel, Limits) {
  EXPECT_NEAR(sine_kernel_limit(0.0), 0.0, 1e-15);
  EXPECT_NEAR(sine_kernel_limit(1.0), 1.0, 1e-15);
  EXPECT_NEAR(sine_kernel_limit(0.5), 1.0 - 4.0 / (M_PI * M_PI), 1e-15);
}
