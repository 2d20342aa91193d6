#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ncorr::mc {

using cplx = std::complex<double>;

// A reproducible random stream. Distinct stream ids give independent
// mt19937_64 states through seed_seq mixing of (seed, stream_id).
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::mt19937_64 engine() const;
};

inline constexpr int kMaxSampleSize = 64;

// Haar-distributed unitary: Ginibre matrix, QR, phases of diag(R) moved into Q.
Eigen::MatrixXcd sample_haar_unitary(int N, std::mt19937_64& rng);

struct EigenAngleSample {
  int N = 0;
  std::vector<double> angles;  // ascending, in [0, 2 pi)
};

EigenAngleSample eigenangles_of(const Eigen::MatrixXcd& U);
EigenAngleSample sample_haar_eigenangles(int N, std::mt19937_64& rng);
EigenAngleSample sample_haar_eigenangles(int N, const RngStream& stream);

struct EstimateWithError {
  cplx mean{};
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// f(theta_1..theta_n) = sum_k c_k exp(i k . theta), finitely many modes.
struct TrigPolynomial {
  struct Term {
    std::vector<int> modes;
    cplx coef;
  };
  int n = 0;
  std::vector<Term> terms;

  cplx operator()(std::span<const double> theta) const;
  int max_degree() const;  // largest |mode| in any variable
  static TrigPolynomial constant(int n, cplx c);
  static TrigPolynomial mode(std::vector<int> modes, cplx c = 1.0);
};

struct McConfig {
  std::uint64_t samples = 20000;
  std::uint64_t seed = 0;
  int batches = 16;      // >= 16; batch b draws from stream id b
  unsigned workers = 0;  // 0: default_workers()
};

// Sum of f over ordered n-tuples of distinct eigenangles, for one sample.
cplx distinct_sum(const TrigPolynomial& f, std::span<const double> angles);

EstimateWithError estimate_correlation(const TrigPolynomial& f, int N, const McConfig& cfg);

// (2 pi)^{-n} int R_{N,n} f, by a shifted equispaced grid that is exact for
// trigonometric polynomials of the given degree.
cplx population_correlation(const TrigPolynomial& f, int N);

// Lambda_X(s) = prod (1 - s e^{-i theta})
cplx char_poly(std::span<const double> angles, cplx s);
// Same for X^*: prod (1 - s e^{i theta})
cplx char_poly_adj(std::span<const double> angles, cplx s);

cplx ratio_sample(std::span<const double> angles, std::span<const cplx> A, std::span<const cplx> B,
                  std::span<const cplx> C, std::span<const cplx> D);

EstimateWithError estimate_ratio_average(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                                         std::span<const cplx> D, int N, const McConfig& cfg);

// |s Lambda'/Lambda(s) + (1/s) Lambda*'/Lambda*(1/s) - N| from resolvent traces of U.
double fe_identity_residual(const Eigen::MatrixXcd& U, cplx s);

// Batch-means estimate from per-batch means (equal batch sizes).
EstimateWithError batch_estimate(std::span<const cplx> batch_means, std::uint64_t samples);

}  // namespace ncorr::mc
