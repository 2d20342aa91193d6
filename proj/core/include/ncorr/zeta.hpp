#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ncorr/combinat.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/primes.hpp"
#include "ncorr/rmt.hpp"

namespace ncorr::zeta {

using cplx = std::complex<double>;
using comb::ShiftSet;

enum class XMode { ExactChi, EllApprox };

// Height t on the critical line. In EllApprox mode X_t(S,T) is replaced by
// e^{-ell (sum S + sum T)} and -chi'/chi(s + mu) by ell.
struct HeightContext {
  double t = 0.0;
  double ell = 0.0;
  XMode mode = XMode::EllApprox;

  static HeightContext at(double t, XMode mode = XMode::EllApprox);
  // Approximate mode at a given density parameter; t = 2 pi e^ell.
  static HeightContext from_ell(double ell);
};

// The one-variable functions the J* machinery is built from. ZetaFamily uses
// zeta(1+x) and chi; RmtFamily substitutes z(x), e^{-N x} and N, which turns
// the zeta engine into the unitary-group formula.
class ScalarFamily {
 public:
  virtual ~ScalarFamily() = default;
  virtual cplx zeta1(cplx x) const = 0;            // zeta(1 + x)
  virtual cplx logderiv1(cplx x) const = 0;        // zeta'/zeta(1 + x)
  virtual cplx logderiv1_prime(cplx x) const = 0;  // (zeta'/zeta)'(1 + x)
  virtual cplx x_factor(const ShiftSet& S, const ShiftSet& T) const = 0;
  virtual cplx u_factor(cplx mu) const = 0;        // -chi'/chi(s + mu)
};

class ZetaFamily final : public ScalarFamily {
 public:
  explicit ZetaFamily(HeightContext h, num::ZetaParams zp = {}) : h_(h), zp_(zp) {}
  cplx zeta1(cplx x) const override;
  cplx logderiv1(cplx x) const override;
  cplx logderiv1_prime(cplx x) const override;
  cplx x_factor(const ShiftSet& S, const ShiftSet& T) const override;
  cplx u_factor(cplx mu) const override;
  const HeightContext& height() const { return h_; }
  const num::ZetaParams& zeta_params() const { return zp_; }

 private:
  HeightContext h_;
  num::ZetaParams zp_;
};

class RmtFamily final : public ScalarFamily {
 public:
  explicit RmtFamily(int N) : N_(N) {}
  cplx zeta1(cplx x) const override;
  cplx logderiv1(cplx x) const override;
  cplx logderiv1_prime(cplx x) const override;
  cplx x_factor(const ShiftSet& S, const ShiftSet& T) const override;
  cplx u_factor(cplx mu) const override;

 private:
  int N_;
};

// X_t(S, T) = prod chi(s + s_hat) prod chi(1 - s + t_hat), s = 1/2 + it.
cplx x_factor(const ShiftSet& S, const ShiftSet& T, const HeightContext& h);

struct EngineConfig {
  const primes::PrimeContext* primes = nullptr;  // required
  primes::ThetaQuadrature quad{};
  num::ZetaParams zeta{};
  double collision_tol = rmt::kCollisionTol;
};

// H_zeta - sum_p H_{p,1} + sum_p H_{p,2} on one block W of Sbar + Tbar.
cplx script_H(const ShiftSet& S, const ShiftSet& T, const comb::Block& W, const ScalarFamily& fam,
              const primes::PrimeContext& ctx, const primes::ThetaQuadrature& quad);

// General J*(A; B; U) from the subset/partition expansion with the arithmetic
// factor and per-prime H functions. |A| + |B| + |U| <= 4.
cplx jstar_general(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, const ScalarFamily& fam,
                   const primes::PrimeContext& ctx, const primes::ThetaQuadrature& quad,
                   double collision_tol = rmt::kCollisionTol);
cplx jstar_zeta_general(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, const HeightContext& h,
                        const EngineConfig& cfg);

// Closed forms (ell approximation only).
enum class Shape { Pair, Triple, Quad13, Quad22 };

class ClosedForms {
 public:
  ClosedForms(double ell, const primes::PrimeContext& ctx, num::ZetaParams zp = {});

  cplx A(cplx x) const;
  cplx B(cplx x) const;
  cplx Q(cplx x, cplx y) const;
  cplx B1(cplx x, cplx y) const;
  cplx B2(cplx a, cplx b1, cplx b2, cplx b3) const;
  cplx B3(cplx a1, cplx a2, cplx b1, cplx b2) const;
  cplx B4(cplx a1, cplx a2, cplx b1, cplx b2) const;
  cplx Astar(cplx a1, cplx a2, cplx b1, cplx b2) const;

  cplx P1(cplx x) const;
  cplx P2(cplx x) const;
  cplx P3(cplx a, cplx b, cplx c) const;
  cplx W(cplx a1, cplx b1, cplx a2, cplx b2) const;
  cplx W1(cplx a, cplx b1, cplx b2, cplx b3) const;

  cplx pair(cplx a, cplx b) const;
  cplx triple(cplx a, cplx b1, cplx b2) const;
  cplx quad_1_3(cplx a, cplx b1, cplx b2, cplx b3) const;
  cplx quad_2_2(cplx a1, cplx a2, cplx b1, cplx b2) const;

 private:
  double ell_;
  const primes::PrimeContext& ctx_;
  num::ZetaParams zp_;
  cplx zeta1(cplx x) const;
  cplx ld(cplx x) const;
  cplx ldp(cplx x) const;
};

// J*(A; B) by shape: A and B as given (|A| <= |B| or swapped internally).
cplx jstar_zeta_closed(const ShiftSet& A, const ShiftSet& B, const HeightContext& h, const EngineConfig& cfg);

enum class Engine { ClosedForm, GeneralMachinery };

struct ZetaCorrelationRequest {
  std::vector<double> points;
  HeightContext height;
  EngineConfig config;
  Engine engine = Engine::ClosedForm;
  bool near_collision_probe = false;
};

// R_{zeta,t,n} assembled over K+L+M, with the M factors -chi'/chi (or ell).
double correlation_zeta(const ZetaCorrelationRequest& req);

// Tripartitions whose J* term is not identically zero (both K, L empty or both nonempty).
std::vector<comb::Tripartition> contributing_tripartitions(int n);

rmt::ResidueReport residue_check_zeta(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, int star_a,
                                      int star_b, const HeightContext& h, const EngineConfig& cfg,
                                      const rmt::LaurentProbe& probe = {});

// 1 - (sin(pi r) / (pi r))^2
double sine_kernel_limit(double r);

}  // namespace ncorr::zeta
