#include "ncorr/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncorr/error.hpp"
#include "ncorr/parallel.hpp"

namespace ncorr::zeta {

namespace {

using comb::Shift;
using comb::Side;
constexpr cplx kI{0.0, 1.0};

cplx sum_values(const ShiftSet& X) {
  cplx s = 0.0;
  for (const auto& x : X) s += x.value;
  return s;
}

std::vector<cplx> vals(const ShiftSet& X, double sign = 1.0) {
  std::vector<cplx> v;
  v.reserve(X.size());
  for (const auto& x : X) v.push_back(sign * x.value);
  return v;
}

void check_collisions(const ShiftSet& A, const ShiftSet& B, double tol) {
  for (const auto& a : A)
    for (const auto& b : B)
      if (std::abs(a.value + b.value) < tol) throw Error(Errc::PoleCollision, "alpha + beta = 0");
  auto same = [&](const ShiftSet& X) {
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = i + 1; j < X.size(); ++j)
        if (std::abs(X[i].value - X[j].value) < tol) throw Error(Errc::PoleCollision, "equal same-side shifts");
  };
  same(A);
  same(B);
}

}  // namespace

HeightContext HeightContext::at(double t, XMode mode) {
  if (!(t > kTwoPi)) throw Error(Errc::DomainError, "height must exceed 2 pi");
  return {t, std::log(t / kTwoPi), mode};
}

HeightContext HeightContext::from_ell(double ell) { return {kTwoPi * std::exp(ell), ell, XMode::EllApprox}; }

cplx x_factor(const ShiftSet& S, const ShiftSet& T, const HeightContext& h) {
  if (h.mode == XMode::EllApprox) return std::exp(-h.ell * (sum_values(S) + sum_values(T)));
  const cplx s{0.5, h.t};
  cplx lg = 0.0;
  for (const auto& a : S) lg += num::log_chi(s + a.value);
  for (const auto& b : T) lg += num::log_chi(1.0 - s + b.value);
  return std::exp(lg);
}

cplx ZetaFamily::zeta1(cplx x) const { return num::zeta(1.0 + x, zp_); }
cplx ZetaFamily::logderiv1(cplx x) const { return num::zeta_logderiv(1.0 + x, zp_); }
cplx ZetaFamily::logderiv1_prime(cplx x) const { return num::zeta_logderiv_prime(1.0 + x, zp_); }
cplx ZetaFamily::x_factor(const ShiftSet& S, const ShiftSet& T) const { return zeta::x_factor(S, T, h_); }
cplx ZetaFamily::u_factor(cplx mu) const {
  if (h_.mode == XMode::EllApprox) return h_.ell;
  return -num::chi_logderiv(cplx{0.5, h_.t} + mu);
}

cplx RmtFamily::zeta1(cplx x) const { return num::z(x); }
cplx RmtFamily::logderiv1(cplx x) const { return num::z_logderiv(x); }
cplx RmtFamily::logderiv1_prime(cplx x) const { return num::z_logderiv_prime(x); }
cplx RmtFamily::x_factor(const ShiftSet& S, const ShiftSet& T) const {
  return std::exp(-double(N_) * (sum_values(S) + sum_values(T)));
}
cplx RmtFamily::u_factor(cplx) const { return double(N_); }

namespace {

// H_zeta on a block; the family supplies zeta'/zeta(1 + .) and its derivative.
cplx H_family(const ShiftSet& S, const ShiftSet& T, const comb::Block& W, const ScalarFamily& fam) {
  if (W.size() == 1) {
    const auto& w = W[0];
    cplx acc = 0.0;
    if (w.side == Side::Alpha) {
      for (const auto& s : S) acc += fam.logderiv1(w.value - s.value);
      for (const auto& t : T) acc -= fam.logderiv1(w.value + t.value);
    } else {
      for (const auto& t : T) acc += fam.logderiv1(w.value - t.value);
      for (const auto& s : S) acc -= fam.logderiv1(w.value + s.value);
    }
    return acc;
  }
  if (W.size() == 2 && W[0].side != W[1].side) return fam.logderiv1_prime(W[0].value + W[1].value);
  return 0.0;
}

comb::Block block_of(const ShiftSet& W, std::uint32_t mask) {
  comb::Block b;
  for (std::size_t i = 0; i < W.size(); ++i)
    if (mask & (1u << i)) b.push_back(W[i]);
  return b;
}

// Arithmetic factor and per-block prime corrections for one (S, T).
struct PrimeSide {
  cplx arith = 1.0;
  std::vector<cplx> correction;  // by block mask over W: sum_p (H_p2 - H_p1)
};

PrimeSide prime_side(const ShiftSet& S, const ShiftSet& T, const ShiftSet& W, const primes::PrimeContext& ctx,
                     const primes::ThetaQuadrature& quad) {
  const std::size_t K = std::size_t{1} << W.size();
  PrimeSide out;
  out.correction.assign(K, 0.0);
  const auto& ps = ctx.primes();
  if (ps.empty()) return out;
  const auto Sv = vals(S), Tv = vals(T), Sn = vals(S, -1.0), Tn = vals(T, -1.0);
  std::vector<cplx> local(ps.size());
  std::vector<std::vector<cplx>> corr(K, std::vector<cplx>(ps.size()));
  std::vector<comb::Block> blocks(K);
  for (std::size_t k = 1; k < K; ++k) blocks[k] = block_of(W, static_cast<std::uint32_t>(k));
  // thread start-up outweighs the work for short prime lists
  parallel_for(ps.size(), ps.size() >= 256 ? 0u : 1u, [&](std::size_t i) {
    const double p = ps[i];
    const auto lm = primes::local_moments(p, S, T, W, quad);
    local[i] = primes::Zp_ratio(p, Tn, Sn, Sv, Tv) * lm.integral;
    for (std::size_t k = 1; k < K; ++k)
      corr[k][i] = primes::cumulant_from_moments(static_cast<std::uint32_t>(k), lm.moment) -
                   primes::H_p1(p, S, T, blocks[k]);
  });
  for (auto v : local) out.arith *= v;
  for (std::size_t k = 1; k < K; ++k) out.correction[k] = tree_sum(corr[k]);
  return out;
}

}  // namespace

cplx script_H(const ShiftSet& S, const ShiftSet& T, const comb::Block& W, const ScalarFamily& fam,
              const primes::PrimeContext& ctx, const primes::ThetaQuadrature& quad) {
  cplx acc = H_family(S, T, W, fam);
  const auto Sv = vals(S), Tv = vals(T), Sn = vals(S, -1.0), Tn = vals(T, -1.0);
  std::vector<cplx> terms;
  terms.reserve(ctx.primes().size());
  const std::uint32_t full = (1u << W.size()) - 1u;
  for (int p : ctx.primes()) {
    const auto lm = primes::local_moments(p, S, T, W, quad);
    terms.push_back(primes::cumulant_from_moments(full, lm.moment) - primes::H_p1(p, S, T, W));
  }
  return acc + tree_sum(terms);
}

cplx jstar_general(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, const ScalarFamily& fam,
                   const primes::PrimeContext& ctx, const primes::ThetaQuadrature& quad, double collision_tol) {
  if (A.size() + B.size() > comb::kMaxPartitionSize) throw Error(Errc::TooLarge, "too many shifts");
  check_collisions(A, B, collision_tol);
  cplx total = 0.0;
  for (const auto& sp : comb::enumerate_subset_pairs(A, B)) {
    cplx Q = fam.x_factor(sp.S, sp.T);
    for (const auto& s : sp.S)
      for (const auto& t : sp.T) Q *= fam.zeta1(s.value + t.value) * fam.zeta1(-s.value - t.value);
    // dagger products skip each element paired with its own negative
    for (const auto* X : {&sp.S, &sp.T})
      for (const auto& x : *X)
        for (const auto& y : *X)
          if (x.label != y.label) Q /= fam.zeta1(x.value - y.value);

    ShiftSet W = sp.Sbar;
    W.insert(W.end(), sp.Tbar.begin(), sp.Tbar.end());
    const auto ps = prime_side(sp.S, sp.T, W, ctx, quad);
    const std::size_t K = std::size_t{1} << W.size();
    std::vector<cplx> H(K, 0.0);
    for (std::size_t k = 1; k < K; ++k)
      H[k] = H_family(sp.S, sp.T, block_of(W, static_cast<std::uint32_t>(k)), fam) + ps.correction[k];
    cplx inner = 0.0;
    for (const auto& part : comb::set_partition_masks(static_cast<int>(W.size()))) {
      cplx prod = 1.0;
      for (auto m : part) prod *= H[m];
      inner += prod;
    }
    total += Q * ps.arith * inner;
  }
  for (const auto& mu : U) total *= fam.u_factor(mu.value);
  return total;
}

cplx jstar_zeta_general(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, const HeightContext& h,
                        const EngineConfig& cfg) {
  if (cfg.primes == nullptr) throw Error(Errc::InvalidArgument, "engine needs a prime context");
  const ZetaFamily fam(h, cfg.zeta);
  return jstar_general(A, B, U, fam, *cfg.primes, cfg.quad, cfg.collision_tol);
}

// ---- closed forms ----

ClosedForms::ClosedForms(double ell, const primes::PrimeContext& ctx, num::ZetaParams zp)
    : ell_(ell), ctx_(ctx), zp_(zp) {}

cplx ClosedForms::zeta1(cplx x) const { return num::zeta(1.0 + x, zp_); }
cplx ClosedForms::ld(cplx x) const { return num::zeta_logderiv(1.0 + x, zp_); }
cplx ClosedForms::ldp(cplx x) const { return num::zeta_logderiv_prime(1.0 + x, zp_); }

namespace {
cplx term(primes::PrimeTerm k, std::initializer_list<cplx> args, const primes::PrimeContext& ctx) {
  const std::vector<cplx> v(args);
  return primes::closed_form_prime_term(k, v, ctx).value;
}
}  // namespace

using primes::PrimeTerm;

cplx ClosedForms::A(cplx x) const { return term(PrimeTerm::A, {x}, ctx_); }
cplx ClosedForms::B(cplx x) const { return term(PrimeTerm::B, {x}, ctx_); }
cplx ClosedForms::Q(cplx x, cplx y) const { return term(PrimeTerm::Q, {x, y}, ctx_); }
cplx ClosedForms::B1(cplx x, cplx y) const { return term(PrimeTerm::B1, {x, y}, ctx_); }
cplx ClosedForms::B2(cplx a, cplx b1, cplx b2, cplx b3) const { return term(PrimeTerm::B2, {a, b1, b2, b3}, ctx_); }
cplx ClosedForms::B3(cplx a1, cplx a2, cplx b1, cplx b2) const {
  return term(PrimeTerm::B3, {a1, a2, b1, b2}, ctx_);
}
cplx ClosedForms::B4(cplx a1, cplx a2, cplx b1, cplx b2) const {
  return term(PrimeTerm::B4, {a1, a2, b1, b2}, ctx_);
}
cplx ClosedForms::Astar(cplx a1, cplx a2, cplx b1, cplx b2) const {
  return term(PrimeTerm::AStar, {a1, a2, b1, b2}, ctx_);
}

cplx ClosedForms::P1(cplx x) const { return std::exp(-ell_ * x) * A(x) * zeta1(x) * zeta1(-x); }
cplx ClosedForms::P2(cplx x) const { return ldp(x) - B(x); }
cplx ClosedForms::P3(cplx a, cplx b, cplx c) const { return B1(a + b, a + c) + ld(a + c) - ld(c - b); }

cplx ClosedForms::W(cplx a1, cplx b1, cplx a2, cplx b2) const {
  return P1(a1 + b1) * (P2(a2 + b2) - B3(a1, a2, b1, b2) + P3(a1, b1, b2) * P3(b1, a1, a2));
}

cplx ClosedForms::W1(cplx a, cplx b1, cplx b2, cplx b3) const {
  return P1(a + b1) * (P3(a, b1, b2) * P3(a, b1, b3) - B2(a, b1, b2, b3));
}

cplx ClosedForms::pair(cplx a, cplx b) const { return P1(a + b) + P2(a + b); }

cplx ClosedForms::triple(cplx a, cplx b1, cplx b2) const {
  return Q(a + b1, a + b2) - P1(a + b1) * P3(a, b1, b2) - P1(a + b2) * P3(a, b2, b1);
}

cplx ClosedForms::quad_1_3(cplx a, cplx b1, cplx b2, cplx b3) const {
  // The log^4 p prime sum enters with a plus sign: four logarithmic
  // derivatives each contribute a factor -log p.
  return term(PrimeTerm::Quad13, {a, b1, b2, b3}, ctx_) + W1(a, b1, b2, b3) + W1(a, b2, b1, b3) +
         W1(a, b3, b1, b2);
}

cplx ClosedForms::quad_2_2(cplx a1, cplx a2, cplx b1, cplx b2) const {
  const cplx zr = zeta1(a1 + b1) * zeta1(a1 + b2) * zeta1(a2 + b1) * zeta1(a2 + b2) * zeta1(-a1 - b1) *
                  zeta1(-a1 - b2) * zeta1(-a2 - b1) * zeta1(-a2 - b2) /
                  (zeta1(a1 - a2) * zeta1(a2 - a1) * zeta1(b1 - b2) * zeta1(b2 - b1));
  return P2(a1 + b1) * P2(a2 + b2) + P2(a1 + b2) * P2(a2 + b1) - B4(a1, a2, b1, b2) +
         std::exp(-ell_ * (a1 + a2 + b1 + b2)) * Astar(a1, a2, b1, b2) * zr + W(a1, b1, a2, b2) +
         W(a1, b2, a2, b1) + W(a2, b1, a1, b2) + W(a2, b2, a1, b1);
}

cplx jstar_zeta_closed(const ShiftSet& A, const ShiftSet& B, const HeightContext& h, const EngineConfig& cfg) {
  if (h.mode != XMode::EllApprox)
    throw Error(Errc::InvalidArgument, "closed forms are written in the ell approximation");
  if (cfg.primes == nullptr) throw Error(Errc::InvalidArgument, "closed forms need a prime context");
  check_collisions(A, B, cfg.collision_tol);
  if (A.empty() && B.empty()) return 1.0;
  if (A.empty() || B.empty()) return 0.0;
  const ClosedForms cf(h.ell, *cfg.primes, cfg.zeta);
  // J*(A; B) is symmetric under swapping the two sides
  const auto& X = A.size() <= B.size() ? A : B;
  const auto& Y = A.size() <= B.size() ? B : A;
  const auto x = vals(X), y = vals(Y);
  if (x.size() == 1 && y.size() == 1) return cf.pair(x[0], y[0]);
  if (x.size() == 1 && y.size() == 2) return cf.triple(x[0], y[0], y[1]);
  if (x.size() == 1 && y.size() == 3) return cf.quad_1_3(x[0], y[0], y[1], y[2]);
  if (x.size() == 2 && y.size() == 2) return cf.quad_2_2(x[0], x[1], y[0], y[1]);
  throw Error(Errc::TooLarge, "no closed form for shape (" + std::to_string(A.size()) + ";" +
                                  std::to_string(B.size()) + ")");
}

std::vector<comb::Tripartition> contributing_tripartitions(int n) {
  std::vector<comb::Tripartition> out;
  for (auto& tp : comb::enumerate_tripartitions(n))
    if (tp.K.empty() == tp.L.empty()) out.push_back(std::move(tp));
  return out;
}

double correlation_zeta(const ZetaCorrelationRequest& req) {
  const int n = static_cast<int>(req.points.size());
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one point");
  if (req.config.primes == nullptr) throw Error(Errc::InvalidArgument, "need a prime context");
  if (!req.near_collision_probe) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(req.points[i] - req.points[j]) < req.config.collision_tol)
          throw Error(Errc::PoleCollision, "points " + std::to_string(i) + " and " + std::to_string(j) + " collide");
  }
  EngineConfig cfg = req.config;
  cfg.collision_tol = 0.0;
  const ZetaFamily fam(req.height, cfg.zeta);
  cplx total = 0.0;
  double scale = 0.0;
  for (const auto& tp : contributing_tripartitions(n)) {
    ShiftSet A, B, U;
    for (int k : tp.K) A.push_back({k, -kI * req.points[k], Side::Alpha});
    for (int l : tp.L) B.push_back({l, kI * req.points[l], Side::Beta});
    for (int m : tp.M) U.push_back({m, kI * req.points[m], Side::Alpha});
    cplx term;
    if (req.engine == Engine::GeneralMachinery) {
      term = jstar_general(A, B, U, fam, *cfg.primes, cfg.quad, 0.0);
    } else {
      term = jstar_zeta_closed(A, B, req.height, cfg);
      for (const auto& mu : U) term *= fam.u_factor(mu.value);
    }
    total += term;
    scale += std::abs(term);
  }
  if (std::abs(total.imag()) > 1e-8 * std::max(1.0, std::abs(total.real())) + 1e-10 * scale)
    throw Error(Errc::ImaginaryResidue, "imaginary part " + std::to_string(total.imag()) + " in assembled correlation");
  return total.real();
}

rmt::ResidueReport residue_check_zeta(const ShiftSet& A, const ShiftSet& B, const ShiftSet& U, int star_a,
                                      int star_b, const HeightContext& h, const EngineConfig& cfg,
                                      const rmt::LaurentProbe& probe) {
  if (cfg.primes == nullptr) throw Error(Errc::InvalidArgument, "need a prime context");
  auto ia = std::find_if(A.begin(), A.end(), [&](const Shift& s) { return s.label == star_a; });
  auto ib = std::find_if(B.begin(), B.end(), [&](const Shift& s) { return s.label == star_b; });
  if (ia == A.end() || ib == B.end()) throw Error(Errc::InvalidArgument, "starred labels not found");
  const std::size_t pa = ia - A.begin();
  const cplx beta_star = ib->value;
  const ZetaFamily fam(h, cfg.zeta);
  auto J = [&](const ShiftSet& X, const ShiftSet& Y) {
    return jstar_general(X, Y, U, fam, *cfg.primes, cfg.quad, 0.0);
  };
  auto f = [&](cplx alpha) {
    ShiftSet Ax = A;
    Ax[pa].value = alpha;
    return J(Ax, B);
  };
  const auto [c1, c2] = rmt::laurent_coefficients(f, -beta_star, probe);
  rmt::LaurentProbe wide = probe;
  wide.radius *= 2.0;
  const auto w = rmt::laurent_coefficients(f, -beta_star, wide);
  if (std::abs(c1 - w.first) > 1e-6 * std::max(1.0, std::abs(c1)))
    throw Error(Errc::ProbeNotIsolated, "residue changes between probe radii r and 2r");

  ShiftSet Ap, Bp;
  for (const auto& s : A)
    if (s.label != star_a) Ap.push_back(s);
  for (const auto& s : B)
    if (s.label != star_b) Bp.push_back(s);
  ShiftSet Aplus = Ap;
  Aplus.push_back({star_a, -beta_star, Side::Alpha});

  rmt::ResidueReport r;
  r.lhs = c1;
  r.double_pole = c2;
  r.rhs = fam.u_factor(-beta_star) * J(Ap, Bp) + J(Ap, B) + J(Aplus, Bp);
  r.abs_error = std::abs(r.lhs - r.rhs);
  return r;
}

double sine_kernel_limit(double r) {
  if (std::abs(r) < 1e-8) return (kPi * r) * (kPi * r) / 3.0;
  const double s = std::sin(kPi * r) / (kPi * r);
  return 1.0 - s * s;
}

}  // namespace ncorr::zeta
