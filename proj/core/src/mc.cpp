#include "ncorr/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ncorr/combinat.hpp"
#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/parallel.hpp"
#include "ncorr/rmt.hpp"

namespace ncorr::mc {

std::mt19937_64 RngStream::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXcd sample_haar_unitary(int N, std::mt19937_64& rng) {
  if (N < 1 || N > kMaxSampleSize) throw Error(Errc::TooLarge, "matrix size must be in 1..64");
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  for (;;) {
    Eigen::MatrixXcd Z(N, N);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) Z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    const auto& R = qr.matrixQR();
    bool degenerate = false;
    for (int k = 0; k < N; ++k) {
      const double r = std::abs(R(k, k));
      if (r < 1e-300) {
        degenerate = true;
        break;
      }
      Q.col(k) *= R(k, k) / r;
    }
    if (!degenerate) return Q;
  }
}

EigenAngleSample eigenangles_of(const Eigen::MatrixXcd& U) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U, false);
  EigenAngleSample s;
  s.N = static_cast<int>(U.rows());
  s.angles.reserve(s.N);
  for (int k = 0; k < s.N; ++k) {
    double a = std::arg(es.eigenvalues()(k));
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    s.angles.push_back(a);
  }
  std::sort(s.angles.begin(), s.angles.end());
  return s;
}

EigenAngleSample sample_haar_eigenangles(int N, std::mt19937_64& rng) {
  return eigenangles_of(sample_haar_unitary(N, rng));
}

EigenAngleSample sample_haar_eigenangles(int N, const RngStream& stream) {
  auto rng = stream.engine();
  return sample_haar_eigenangles(N, rng);
}

cplx TrigPolynomial::operator()(std::span<const double> theta) const {
  cplx acc = 0.0;
  for (const auto& t : terms) {
    double ph = 0.0;
    for (int j = 0; j < n; ++j) ph += t.modes[j] * theta[j];
    acc += t.coef * std::polar(1.0, ph);
  }
  return acc;
}

int TrigPolynomial::max_degree() const {
  int d = 0;
  for (const auto& t : terms)
    for (int m : t.modes) d = std::max(d, std::abs(m));
  return d;
}

TrigPolynomial TrigPolynomial::constant(int n, cplx c) { return {n, {{std::vector<int>(n, 0), c}}}; }

TrigPolynomial TrigPolynomial::mode(std::vector<int> modes, cplx c) {
  const int n = static_cast<int>(modes.size());
  return {n, {{std::move(modes), c}}};
}

cplx distinct_sum(const TrigPolynomial& f, std::span<const double> angles) {
  const int n = f.n;
  static const double kMobius[] = {1.0, -1.0, 2.0, -6.0, 24.0};
  if (n < 1 || n > 4) throw Error(Errc::InvalidArgument, "test function arity must be 1..4");
  const auto parts = comb::set_partition_masks(n);
  cplx total = 0.0;
  for (const auto& t : f.terms) {
    // power sums p(m) = sum_j e^{i m theta_j} for each block's total mode
    for (const auto& part : parts) {
      cplx prod = 1.0;
      for (auto mask : part) {
        int m = 0;
        for (int j = 0; j < n; ++j)
          if (mask & (1u << j)) m += t.modes[j];
        cplx p = 0.0;
        for (double a : angles) p += std::polar(1.0, m * a);
        prod *= p;
      }
      double mu = 1.0;
      for (auto mask : part) mu *= kMobius[std::popcount(mask) - 1];
      total += t.coef * mu * prod;
    }
  }
  return total;
}

EstimateWithError batch_estimate(std::span<const cplx> batch_means, std::uint64_t samples) {
  const std::size_t B = batch_means.size();
  EstimateWithError e;
  e.samples = samples;
  if (B == 0) return e;
  e.mean = tree_sum(batch_means) / double(B);
  if (B > 1) {
    double ss = 0.0;
    for (auto m : batch_means) ss += std::norm(m - e.mean);
    e.std_error = std::sqrt(ss / double(B - 1) / double(B));
  }
  return e;
}

namespace {

template <class PerSample>
EstimateWithError run_batches(int N, const McConfig& cfg, PerSample&& per_sample) {
  if (cfg.batches < 16) throw Error(Errc::InvalidArgument, "need at least 16 batches");
  if (cfg.samples < std::uint64_t(cfg.batches)) throw Error(Errc::InvalidArgument, "fewer samples than batches");
  const std::size_t B = cfg.batches;
  const std::uint64_t per = cfg.samples / B;
  std::vector<cplx> means(B);
  parallel_for(B, cfg.workers, [&](std::size_t b) {
    auto rng = RngStream{cfg.seed, b}.engine();
    std::vector<cplx> vals(per);
    for (std::uint64_t k = 0; k < per; ++k) vals[k] = per_sample(sample_haar_eigenangles(N, rng).angles);
    means[b] = tree_sum(vals) / double(per);
  });
  return batch_estimate(means, per * B);
}

}  // namespace

EstimateWithError estimate_correlation(const TrigPolynomial& f, int N, const McConfig& cfg) {
  return run_batches(N, cfg, [&](const std::vector<double>& a) { return distinct_sum(f, a); });
}

cplx population_correlation(const TrigPolynomial& f, int N) {
  const int n = f.n;
  if (n < 1 || n > 4) throw Error(Errc::InvalidArgument, "arity must be 1..4");
  const int M = N + f.max_degree() + 2;
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= M;
  std::vector<cplx> vals(total);
  parallel_for(total, 0, [&](std::size_t idx) {
    std::vector<double> th(n);
    std::size_t r = idx;
    for (int j = 0; j < n; ++j) {
      th[j] = kTwoPi * (double(r % M) + double(j) / n) / M;
      r /= M;
    }
    vals[idx] = rmt::correlation_rmt(th, N) * f(th);
  });
  return tree_sum(vals) / double(total);
}

cplx char_poly(std::span<const double> angles, cplx s) {
  cplx v = 1.0;
  for (double a : angles) v *= 1.0 - s * std::polar(1.0, -a);
  return v;
}

cplx char_poly_adj(std::span<const double> angles, cplx s) {
  cplx v = 1.0;
  for (double a : angles) v *= 1.0 - s * std::polar(1.0, a);
  return v;
}

cplx ratio_sample(std::span<const double> angles, std::span<const cplx> A, std::span<const cplx> B,
                  std::span<const cplx> C, std::span<const cplx> D) {
  cplx num = 1.0, den = 1.0;
  for (auto a : A) num *= char_poly(angles, std::exp(-a));
  for (auto b : B) num *= char_poly_adj(angles, std::exp(-b));
  for (auto c : C) den *= char_poly(angles, std::exp(-c));
  for (auto d : D) den *= char_poly_adj(angles, std::exp(-d));
  return num / den;
}

EstimateWithError estimate_ratio_average(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                                         std::span<const cplx> D, int N, const McConfig& cfg) {
  for (auto c : C)
    if (!(c.real() > 0)) throw Error(Errc::SideConditionViolated, "Re gamma must be positive");
  for (auto d : D)
    if (!(d.real() > 0)) throw Error(Errc::SideConditionViolated, "Re delta must be positive");
  return run_batches(N, cfg, [&](const std::vector<double>& a) { return ratio_sample(a, A, B, C, D); });
}

double fe_identity_residual(const Eigen::MatrixXcd& U, cplx s) {
  const int N = static_cast<int>(U.rows());
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);
  const Eigen::MatrixXcd Ua = U.adjoint();
  // Lambda'/Lambda(s) = -tr((I - s U^*)^{-1} U^*), and likewise for U
  const cplx l1 = -(I - s * Ua).partialPivLu().solve(Ua).trace();
  const cplx u = 1.0 / s;
  const cplx l2 = -(I - u * U).partialPivLu().solve(U).trace();
  return std::abs(s * l1 + u * l2 - double(N));
}

}  // namespace ncorr::mc
