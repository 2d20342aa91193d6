#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ncorr/combinat.hpp"

namespace ncorr::primes {

using cplx = std::complex<double>;

enum class TailPolicy { None, Estimate };

class PrimeContext {
 public:
  // All primes <= cutoff; cutoff must be at least 11.
  static PrimeContext build(int cutoff, TailPolicy policy = TailPolicy::Estimate);
  // No primes at all: every Euler product is 1 and every prime sum is 0.
  static PrimeContext none();

  int cutoff() const noexcept { return cutoff_; }
  const std::vector<int>& primes() const noexcept { return primes_; }
  TailPolicy tail_policy() const noexcept { return policy_; }
  bool empty() const noexcept { return primes_.empty(); }

 private:
  int cutoff_ = 0;
  std::vector<int> primes_;
  TailPolicy policy_ = TailPolicy::None;
};

std::vector<int> sieve(int limit);

struct ThetaQuadrature {
  int nodes = 256;       // starting node count, power of two >= 32
  int max_nodes = 8192;  // doubling stops here with QuadratureNotConverged
  double tol = 1e-12;    // relative change accepted between doublings
};

// Truncated sum or product together with a fitted estimate of the omitted tail.
struct PrimeValue {
  cplx value{};
  double tail_estimate = 0.0;
};

// Tail of sum_{p > P} |term(p)| assuming |term(p)| ~ c (log p)^m p^{-k};
// c and k are fitted on the primes in (P/2, P].
double fit_tail(std::span<const int> primes, std::span<const double> magnitudes, int log_power);

// z_p(x) = (1 - p^{-x})^{-1} and logarithmic derivatives.
cplx zp(double p, cplx x);
cplx zp_logderiv(double p, cplx x);
cplx zp_logderiv_prime(double p, cplx x);

// z_{p,theta}(x) = (1 - e(theta) p^{-x})^{-1}, e(theta) = exp(2 pi i theta).
cplx zpt(double p, double theta, cplx x);
cplx zpt_logderiv(double p, double theta, cplx x);

// Named Euler products and prime sums built from closed-form local terms.
//   A(x), B(x): args {x}
//   Q(x, y), B1(x, y): args {x, y}
//   B2: {a, b1, b2, b3};  B3, B4, AStar: {a1, a2, b1, b2}
//   Quad13: {a, b1, b2, b3}, the term sum_p log^4 p prod_j z_p(1+a+b_j) / p^{3+3a+b1+b2+b3}
// Values are returned without any overall sign convention applied.
enum class PrimeTerm { A, B, Q, B1, B2, B3, B4, AStar, Quad13 };

const char* prime_term_name(PrimeTerm k) noexcept;
int prime_term_arity(PrimeTerm k) noexcept;
bool prime_term_is_product(PrimeTerm k) noexcept;

cplx prime_term_local(PrimeTerm kind, double p, std::span<const cplx> args);
cplx c_polynomial_local(double p, cplx a1, cplx a2, cplx b1, cplx b2);
PrimeValue closed_form_prime_term(PrimeTerm kind, std::span<const cplx> args, const PrimeContext& ctx);

// A_{p,theta}(A, B; C, D) on raw shift values.
cplx local_factor(double p, double theta, std::span<const cplx> A, std::span<const cplx> B,
                  std::span<const cplx> C, std::span<const cplx> D);

// Z_p(A, B) = prod z_p(1 + alpha + beta)^{-1} and the four-set ratio built from it.
cplx Zp(double p, std::span<const cplx> A, std::span<const cplx> B);
cplx Zp_ratio(double p, std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
              std::span<const cplx> D);

// Theta-moments of A_{p,theta}(T^-, S^-; S, T) against the logarithmic
// derivatives attached to the elements of W (subset of Sbar + Tbar):
//   moment[mask] = int A prod_{i in mask} d_i dtheta / int A dtheta,
// with d_i = z'_{p,-theta}/z_{p,-theta}(1/2 + alpha) for alpha-side elements and
// z'_{p,theta}/z_{p,theta}(1/2 + beta) for beta-side ones. integral = int A dtheta.
struct LocalMoments {
  cplx integral{};
  std::vector<cplx> moment;  // indexed by bitmask over W, moment[0] = 1
  int nodes_used = 0;
};

LocalMoments local_moments(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::ShiftSet& W,
                           const ThetaQuadrature& quad);

// c_{S,T}(X) for a single subset X of Sbar + Tbar.
cplx c_ST(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::ShiftSet& X,
          const ThetaQuadrature& quad);

// Per-prime H functions. H_p1 follows the singleton / mixed-pair case table and
// vanishes on every other block shape; H_p2 is the cumulant of the moments.
cplx H_p1(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::Block& W);
cplx H_p2(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::Block& W,
          const ThetaQuadrature& quad);
// Cumulant from a moment table over a block's positions.
cplx cumulant_from_moments(std::uint32_t block_mask, std::span<const cplx> moment);

// prod_p Z_p(A,B;C,D) int_0^1 A_{p,theta}(A,B;C,D) dtheta
PrimeValue arithmetic_factor(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                             std::span<const cplx> D, const PrimeContext& ctx, const ThetaQuadrature& quad);

}  // namespace ncorr::primes
