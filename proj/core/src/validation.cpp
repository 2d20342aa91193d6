#include "ncorr/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ncorr/combinat.hpp"
#include "ncorr/error.hpp"
#include "ncorr/mc.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/primes.hpp"
#include "ncorr/rmt.hpp"
#include "ncorr/zeros.hpp"
#include "ncorr/zeta.hpp"

namespace ncorr::validation {

namespace {

using cplx = std::complex<double>;
using comb::Side;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

CheckResult make(const std::string& name, double measured, double threshold, std::string detail = {}) {
  return {name, measured <= threshold, measured, threshold, std::move(detail)};
}

comb::ShiftSet random_shifts(int k, Side side, int label_base, std::mt19937_64& rng, double re_lo, double re_hi) {
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-1.0, 1.0);
  comb::ShiftSet s;
  for (int i = 0; i < k; ++i) s.push_back({label_base + i, cplx(re(rng), im(rng)), side});
  return s;
}

CheckResult check_determinant(const ValidationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int n : {2, 3, 4})
    for (int N : {2, 3, 5, 8})
      for (int k = 0; k < 20; ++k) {
        const auto th = rmt::random_separated_angles(n, 0.05, rng);
        const double r = rmt::correlation_rmt(th, N);
        const double d = rmt::determinant_oracle(th, N);
        worst = std::max(worst, std::abs(r - d) / std::max(1.0, std::abs(d)));
      }
  return make("determinant", worst, 1e-8, "n in {2,3,4}, N in {2,3,5,8}, 20 tuples each");
}

CheckResult check_residue_rmt(const ValidationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto A = random_shifts(2, Side::Alpha, 0, rng, 0.05, 0.3);
    const auto B = random_shifts(2, Side::Beta, 10, rng, 0.05, 0.3);
    const auto r = rmt::residue_check(A, B, 0, 10, 3);
    worst = std::max({worst, std::abs(r.lhs - r.rhs) / std::max(1e-300, std::abs(r.rhs)), std::abs(r.double_pole)});
  }
  return make("residue-rmt", worst, 1e-6, "|A|=|B|=2, N=3");
}

zeta::EngineConfig engine_config(const primes::PrimeContext& ctx, const ValidationConfig& cfg) {
  zeta::EngineConfig ec;
  ec.primes = &ctx;
  ec.quad.nodes = cfg.quad_nodes;
  ec.zeta.em_order = cfg.em_terms;
  return ec;
}

CheckResult check_residue_zeta(const ValidationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto ctx = primes::PrimeContext::build(cfg.prime_cutoff, primes::TailPolicy::None);
  const auto ec = engine_config(ctx, cfg);
  const auto h = zeta::HeightContext::at(1000.0, zeta::XMode::ExactChi);
  double worst = 0.0;
  for (int k : {1, 2}) {
    const auto A = random_shifts(k, Side::Alpha, 0, rng, 0.05, 0.15);
    const auto B = random_shifts(k, Side::Beta, 10, rng, 0.05, 0.15);
    const auto r = zeta::residue_check_zeta(A, B, {}, 0, 10, h, ec);
    worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(1e-300, std::abs(r.rhs)));
  }
  return make("residue-zeta", worst, 1e-5, "exact chi at t=1000, |A|=|B| in {1,2}");
}

CheckResult check_mc_ratio(const ValidationConfig& cfg) {
  const std::vector<cplx> A{0.1}, B{0.2}, C{0.3}, D{0.25};
  mc::McConfig mc{cfg.samples, cfg.seed, 16, cfg.workers};
  const auto est = mc::estimate_ratio_average(A, B, C, D, 4, mc);
  const cplx exact = rmt::ratios_average(A, B, C, D, 4);
  const double z = std::abs(est.mean - exact) / std::max(1e-300, est.std_error);
  return make("mc-ratio", z, 3.0, "deviation in standard errors, N=4");
}

CheckResult check_mc_correlation(const ValidationConfig& cfg) {
  mc::TrigPolynomial f{2, {{{1, -1}, 1.0}, {{2, -2}, 0.5}, {{0, 0}, 0.25}}};
  mc::McConfig mc{cfg.samples, cfg.seed, 16, cfg.workers};
  const auto est = mc::estimate_correlation(f, 6, mc);
  const cplx pop = mc::population_correlation(f, 6);
  const double z = std::abs(est.mean - pop) / std::max(1e-300, est.std_error);
  return make("mc-correlation", z, 3.0, "n=2, N=6, deviation in standard errors");
}

CheckResult check_fe_identity(const ValidationConfig& cfg) {
  auto rng = mc::RngStream{cfg.seed, 0}.engine();
  const cplx s = std::polar(0.7, 0.3);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) worst = std::max(worst, mc::fe_identity_residual(mc::sample_haar_unitary(8, rng), s));
  return make("fe-identity", worst, 1e-10, "1000 matrices, N=8");
}

CheckResult check_engine_equivalence(const ValidationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto ctx = primes::PrimeContext::build(cfg.prime_cutoff, primes::TailPolicy::None);
  const auto ec = engine_config(ctx, cfg);
  const auto h = zeta::HeightContext::from_ell(10.0);
  double worst = 0.0;
  for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 2}})
    for (int k = 0; k < 5; ++k) {
      const auto A = random_shifts(a, Side::Alpha, 0, rng, -0.1, 0.1);
      const auto B = random_shifts(b, Side::Beta, 10, rng, -0.1, 0.1);
      const cplx c = zeta::jstar_zeta_closed(A, B, h, ec);
      const cplx g = zeta::jstar_zeta_general(A, B, {}, h, ec);
      worst = std::max(worst, std::abs(c - g) / std::max(1e-300, std::abs(g)));
    }
  return make("engine-equivalence", worst, 1e-6, "pair, triple, 1+3, 2+2; 5 tuples each");
}

CheckResult check_zeros_pair(const ValidationConfig& cfg) {
  if (cfg.zeros_path.empty()) throw Error(Errc::MissingInput, "zeros-pair needs a zero table (--zeros)");
  const auto table = zeros::load_zero_table(cfg.zeros_path);
  const zeros::Window w{1e4, std::min(5e4, table.gammas.back())};
  const auto f = zeros::gaussian_pair(0.25);
  zeros::EmpiricalOptions opt;
  opt.workers = cfg.workers;
  const auto emp = zeros::empirical_correlation(table, f, w, opt);
  const auto ctx = primes::PrimeContext::build(std::max(cfg.prime_cutoff, 10007), primes::TailPolicy::None);
  const zeros::PairConjecture pc(ctx, f.support);
  const auto conj = pc.window_integral(f, w, opt.sub_windows, zeros::PairModel::FullFormula);
  const double z = std::abs(emp.value - conj.value) / std::max(1e-300, emp.std_error);
  return make("zeros-pair", z, 3.0,
              "empirical " + fmt(emp.value) + " vs conjecture " + fmt(conj.value) + ", deviation in standard errors");
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"determinant", "residue-rmt", "residue-zeta", "mc-ratio",
                                              "mc-correlation", "zeros-pair", "fe-identity", "engine-equivalence"};
  return names;
}

CheckResult run_check(const std::string& name, const ValidationConfig& cfg) {
  if (name == "determinant") return check_determinant(cfg);
  if (name == "residue-rmt") return check_residue_rmt(cfg);
  if (name == "residue-zeta") return check_residue_zeta(cfg);
  if (name == "mc-ratio") return check_mc_ratio(cfg);
  if (name == "mc-correlation") return check_mc_correlation(cfg);
  if (name == "zeros-pair") return check_zeros_pair(cfg);
  if (name == "fe-identity") return check_fe_identity(cfg);
  if (name == "engine-equivalence") return check_engine_equivalence(cfg);
  throw Error(Errc::InvalidArgument, "unknown check '" + name + "'");
}

}  // namespace ncorr::validation
