#include <benchmark/benchmark.h>

#include <random>

#include "ncorr/mc.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/primes.hpp"
#include "ncorr/rmt.hpp"
#include "ncorr/zeta.hpp"

using namespace ncorr;
using cplx = std::complex<double>;

static void BM_ZetaJet(benchmark::State& st) {
  const cplx s(1.05, double(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(num::zeta_jet(s));
}
BENCHMARK(BM_ZetaJet)->Arg(1)->Arg(100)->Arg(1000);

static void BM_RmtJstar(benchmark::State& st) {
  const int k = int(st.range(0));
  std::vector<cplx> A, B;
  for (int i = 0; i < k; ++i) A.emplace_back(0.1, 0.3 * i + 0.1), B.emplace_back(0.2, -0.4 * i - 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(rmt::jstar(A, B, 10));
}
BENCHMARK(BM_RmtJstar)->DenseRange(1, 3);

static void BM_RmtCorrelation(benchmark::State& st) {
  std::vector<double> th;
  for (int i = 0; i < st.range(0); ++i) th.push_back(0.7 * i + 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(rmt::correlation_rmt(th, 8));
}
BENCHMARK(BM_RmtCorrelation)->DenseRange(2, 4);

static void BM_ZetaClosedPair(benchmark::State& st) {
  const auto ctx = primes::PrimeContext::build(int(st.range(0)));
  zeta::ZetaCorrelationRequest req;
  req.points = {0.0, 0.3};
  req.height = zeta::HeightContext::at(1e12);
  req.config.primes = &ctx;
  for (auto _ : st) benchmark::DoNotOptimize(zeta::correlation_zeta(req));
}
BENCHMARK(BM_ZetaClosedPair)->Arg(101)->Arg(10007);

static void BM_ZetaGeneralQuad(benchmark::State& st) {
  const auto ctx = primes::PrimeContext::build(101);
  zeta::EngineConfig cfg;
  cfg.primes = &ctx;
  const auto h = zeta::HeightContext::at(1e12);
  const std::vector<cplx> a{cplx(0.01, 0.3), cplx(-0.02, -0.5)}, b{cplx(0.03, 0.2), cplx(0.0, 0.9)};
  const auto A = comb::make_shifts(a, comb::Side::Alpha, 0);
  const auto B = comb::make_shifts(b, comb::Side::Beta, 10);
  for (auto _ : st) benchmark::DoNotOptimize(zeta::jstar_zeta_general(A, B, {}, h, cfg));
}
BENCHMARK(BM_ZetaGeneralQuad)->Unit(benchmark::kMillisecond);

static void BM_HaarEigenangles(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const int N = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mc::sample_haar_eigenangles(N, rng));
}
BENCHMARK(BM_HaarEigenangles)->Arg(4)->Arg(8)->Arg(32);
BENCHMARK_MAIN();
