#include "ncorr/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"
#include "ncorr/parallel.hpp"

namespace ncorr::primes {

namespace {

constexpr double kLocalPoleTol = 1e-12;

inline cplx ppow(double lp, cplx w) { return std::exp(w * lp); }

inline cplx e_theta(double theta) { return std::polar(1.0, kTwoPi * theta); }

void check_strip(std::span<const cplx> args, double half_width) {
  for (const auto& a : args)
    if (!(std::abs(a.real()) < half_width))
      throw Error(Errc::StripViolation, "shift real part outside the strip |Re| < " + std::to_string(half_width));
}

double upper_gamma_int(int m, double y) {
  if (m <= 0) return -std::expint(-y);
  double term = 1.0, acc = 1.0, fact = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= y / k;
    acc += term;
    fact *= k;
  }
  return fact * std::exp(-y) * acc;
}

int prime_term_log_power(PrimeTerm k) {
  switch (k) {
    case PrimeTerm::A: return 0;
    case PrimeTerm::B: return 2;
    case PrimeTerm::Q: return 3;
    case PrimeTerm::B1: return 1;
    case PrimeTerm::B2: return 2;
    case PrimeTerm::B3: return 2;
    case PrimeTerm::B4: return 4;
    case PrimeTerm::AStar: return 0;
    case PrimeTerm::Quad13: return 4;
  }
  return 0;
}

}  // namespace

std::vector<int> sieve(int limit) {
  std::vector<int> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (int i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long long j = static_cast<long long>(i) * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

PrimeContext PrimeContext::build(int cutoff, TailPolicy policy) {
  if (cutoff < 11) throw Error(Errc::CutoffTooSmall, "prime cutoff must be >= 11, got " + std::to_string(cutoff));
  PrimeContext ctx;
  ctx.cutoff_ = cutoff;
  ctx.primes_ = sieve(cutoff);
  ctx.policy_ = policy;
  return ctx;
}

PrimeContext PrimeContext::none() { return PrimeContext{}; }

double fit_tail(std::span<const int> ps, std::span<const double> mags, int log_power) {
  if (ps.empty()) return 0.0;
  const double P = ps.back();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] <= P / 2 || !(mags[i] > 1e-300)) continue;
    const double x = std::log(double(ps[i]));
    const double y = std::log(mags[i]) - log_power * std::log(x);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 3) return 0.0;
  const double den = n * sxx - sx * sx;
  if (den <= 0) return 0.0;
  const double slope = (n * sxy - sx * sy) / den;
  const double lc = (sy - slope * sx) / n;
  const double kappa = std::max(1.05, -slope);
  const double y = (kappa - 1.0) * std::log(P);
  return std::exp(lc) * upper_gamma_int(log_power, y) / std::pow(kappa - 1.0, log_power);
}

cplx zp(double p, cplx x) { return 1.0 / (1.0 - ppow(std::log(p), -x)); }

cplx zp_logderiv(double p, cplx x) {
  const double lp = std::log(p);
  return -lp / num::expm1(x * lp);
}

cplx zp_logderiv_prime(double p, cplx x) {
  const double lp = std::log(p);
  const cplx e = num::expm1(x * lp);
  return lp * lp * (e + 1.0) / (e * e);
}

cplx zpt(double p, double theta, cplx x) {
  const cplx w = e_theta(theta) * ppow(std::log(p), -x);
  if (std::abs(1.0 - w) < kLocalPoleTol) throw Error(Errc::LocalPole, "z_{p,theta} singular");
  return 1.0 / (1.0 - w);
}

cplx zpt_logderiv(double p, double theta, cplx x) {
  const double lp = std::log(p);
  const cplx w = e_theta(theta) * ppow(lp, -x);
  if (std::abs(1.0 - w) < kLocalPoleTol) throw Error(Errc::LocalPole, "z_{p,theta} singular");
  return -lp * w / (1.0 - w);
}

const char* prime_term_name(PrimeTerm k) noexcept {
  switch (k) {
    case PrimeTerm::A: return "A";
    case PrimeTerm::B: return "B";
    case PrimeTerm::Q: return "Q";
    case PrimeTerm::B1: return "B1";
    case PrimeTerm::B2: return "B2";
    case PrimeTerm::B3: return "B3";
    case PrimeTerm::B4: return "B4";
    case PrimeTerm::AStar: return "Astar";
    case PrimeTerm::Quad13: return "Quad13";
  }
  return "?";
}

int prime_term_arity(PrimeTerm k) noexcept {
  switch (k) {
    case PrimeTerm::A:
    case PrimeTerm::B: return 1;
    case PrimeTerm::Q:
    case PrimeTerm::B1: return 2;
    default: return 4;
  }
}

bool prime_term_is_product(PrimeTerm k) noexcept { return k == PrimeTerm::A || k == PrimeTerm::AStar; }

cplx c_polynomial_local(double p, cplx a1, cplx a2, cplx b1, cplx b2) {
  const double lp = std::log(p);
  auto P = [lp](cplx w) { return ppow(lp, w); };
  return -P(a1 + b1) + 2.0 * P(a1 + b1 + 1.0) - P(a2 + b1 + 2.0) - P(2.0 * a1 + 2.0 * b1 + 1.0) +
         P(a1 + a2 + 2.0 * b1 + 1.0) - P(a1 + b2 + 2.0) + P(a2 + b2 + 2.0) + P(2.0 * a1 + b1 + b2 + 1.0) -
         2.0 * P(a1 + a2 + b1 + b2 + 2.0) + P(a1 + a2 + b1 + b2 + 3.0);
}

cplx prime_term_local(PrimeTerm kind, double p, std::span<const cplx> a) {
  const double lp = std::log(p);
  auto P = [lp](cplx w) { return ppow(lp, w); };
  switch (kind) {
    case PrimeTerm::A: {
      const cplx u = P(-1.0 - a[0]);
      return (1.0 - u) * (1.0 - 2.0 / p + u) / ((1.0 - 1.0 / p) * (1.0 - 1.0 / p));
    }
    case PrimeTerm::B: {
      const cplx r = lp / (P(1.0 + a[0]) - 1.0);
      return r * r;
    }
    case PrimeTerm::Q: {
      const cplx x = a[0], y = a[1];
      return -lp * lp * lp / (P(2.0 + x + y) * (1.0 - P(-1.0 - x)) * (1.0 - P(-1.0 - y)));
    }
    case PrimeTerm::B1: {
      const cplx x = a[0], y = a[1];
      const cplx num = (1.0 - P(-x)) * (1.0 - P(-x) - P(-y) + P(-1.0 - y)) * lp;
      const cplx den = (1.0 - P(-1.0 + x - y)) * (1.0 - P(-1.0 - y)) * (1.0 - 2.0 / p + P(-1.0 - x)) * P(2.0 - x + y);
      return num / den;
    }
    case PrimeTerm::B2: {
      const cplx A = a[0], b1 = a[1], b2 = a[2], b3 = a[3];
      const cplx pab = P(A + b1);
      const cplx g = -2.0 * pab + P(A + b1 + 1.0) + 1.0;
      const cplx num = (p - 1.0) * P(2.0 * b1) * (pab - 1.0) * (pab - p) * lp * lp;
      const cplx den = g * g * (P(b1) - P(b2 + 1.0)) * (P(b1) - P(b3 + 1.0));
      return num / den;
    }
    case PrimeTerm::B3: {
      const cplx a1 = a[0], a2 = a[1], b1 = a[2], b2 = a[3];
      const cplx pab = P(a1 + b1);
      const cplx g = -2.0 * pab + P(a1 + b1 + 1.0) + 1.0;
      const cplx da = P(a1) - P(a2 + 1.0);
      const cplx t1 = (p - 1.0) * (p - 1.0) * (pab - 1.0) * (pab - 1.0) * pab / (da * g * g * (P(b1) - P(b2 + 1.0)));
      const cplx t2 = c_polynomial_local(p, a1, a2, b1, b2) /
                      (da * g * (P(b2 + 1.0) - P(b1)) * (P(a2 + b2 + 1.0) - 1.0));
      const cplx t3 = 1.0 / (P(a2 + b2 + 1.0) - 1.0);
      return lp * lp * (t1 + t2 + t3);
    }
    case PrimeTerm::B4: {
      const cplx a1 = a[0], a2 = a[1], b1 = a[2], b2 = a[3];
      const cplx q11 = P(1.0 + a1 + b1), q21 = P(1.0 + a2 + b1), q12 = P(1.0 + a1 + b2), q22 = P(1.0 + a2 + b2);
      const cplx num = (3.0 - q11 - q21 - q12 - q22 + P(2.0 + a1 + a2 + b1 + b2)) * std::pow(lp, 4);
      return num / ((q11 - 1.0) * (q21 - 1.0) * (q12 - 1.0) * (q22 - 1.0));
    }
    case PrimeTerm::AStar: {
      const cplx a1 = a[0], a2 = a[1], b1 = a[2], b2 = a[3];
      const cplx A2[2] = {a1, a2}, B2[2] = {b1, b2};
      const cplx An[2] = {-a1, -a2}, Bn[2] = {-b1, -b2};
      const cplx ratio = Zp(p, A2, B2) * Zp(p, An, Bn) / (Zp(p, A2, An) * Zp(p, B2, Bn));
      const cplx z1 = zp(p, 1.0);
      const cplx x1 = zp(p, 1.0 - a1 - b1) * zp(p, 1.0 - a2 - b1) * zp(p, b2 - b1) /
                      (z1 * zp(p, -a1 - b1) * zp(p, -a2 - b1) * zp(p, 1.0 + b2 - b1));
      const cplx x2 = zp(p, 1.0 - a1 - b2) * zp(p, 1.0 - a2 - b2) * zp(p, b1 - b2) /
                      (z1 * zp(p, -a1 - b2) * zp(p, -a2 - b2) * zp(p, 1.0 + b1 - b2));
      // residues of the theta integral at w = 0 and w = p^{-1/2 + b_j}
      return ratio * P(-a1 - a2 - b1 - b2) * (1.0 - x1 - x2);
    }
    case PrimeTerm::Quad13: {
      const cplx A = a[0], b1 = a[1], b2 = a[2], b3 = a[3];
      return std::pow(lp, 4) * zp(p, 1.0 + A + b1) * zp(p, 1.0 + A + b2) * zp(p, 1.0 + A + b3) /
             P(3.0 + 3.0 * A + b1 + b2 + b3);
    }
  }
  return 0.0;
}

PrimeValue closed_form_prime_term(PrimeTerm kind, std::span<const cplx> args, const PrimeContext& ctx) {
  if (static_cast<int>(args.size()) != prime_term_arity(kind))
    throw Error(Errc::ArityMismatch, std::string("wrong number of arguments for ") + prime_term_name(kind));
  // A, B, Q, B1 take sums of two shifts; the rest take raw shifts.
  check_strip(args, prime_term_arity(kind) <= 2 ? 0.5 : 0.25);
  const auto& ps = ctx.primes();
  std::vector<cplx> local(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) local[i] = prime_term_local(kind, ps[i], args);
  PrimeValue out;
  std::vector<double> mags(ps.size());
  if (prime_term_is_product(kind)) {
    cplx prod = 1.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      prod *= local[i];
      mags[i] = std::abs(local[i] - 1.0);
    }
    out.value = prod;
  } else {
    for (std::size_t i = 0; i < ps.size(); ++i) mags[i] = std::abs(local[i]);
    out.value = tree_sum(std::span<const cplx>(local));
  }
  if (ctx.tail_policy() == TailPolicy::Estimate) {
    out.tail_estimate = fit_tail(ps, mags, prime_term_log_power(kind));
    if (prime_term_is_product(kind)) out.tail_estimate *= std::abs(out.value);
  }
  return out;
}

cplx local_factor(double p, double theta, std::span<const cplx> A, std::span<const cplx> B,
                  std::span<const cplx> C, std::span<const cplx> D) {
  cplx num = 1.0, den = 1.0;
  for (auto x : A) num *= zpt(p, -theta, 0.5 + x);
  for (auto x : B) num *= zpt(p, theta, 0.5 + x);
  for (auto x : C) den *= zpt(p, -theta, 0.5 + x);
  for (auto x : D) den *= zpt(p, theta, 0.5 + x);
  return num / den;
}

cplx Zp(double p, std::span<const cplx> A, std::span<const cplx> B) {
  cplx out = 1.0;
  for (auto a : A)
    for (auto b : B) out /= zp(p, 1.0 + a + b);
  return out;
}

cplx Zp_ratio(double p, std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
              std::span<const cplx> D) {
  return Zp(p, A, B) * Zp(p, C, D) / (Zp(p, A, D) * Zp(p, B, C));
}

namespace {

// Equispaced trapezoid rule on [0,1) for K periodic integrands at once, with
// node doubling until successive results agree.
template <class F>
std::vector<cplx> periodic_trapezoid(F&& f, std::size_t K, const ThetaQuadrature& q, int& nodes_used) {
  int n = q.nodes;
  if (n < 32 || (n & (n - 1)) != 0)
    throw Error(Errc::InvalidArgument, "theta quadrature node count must be a power of two >= 32");
  std::vector<cplx> sum(K, 0.0), buf(K);
  for (int j = 0; j < n; ++j) {
    f(double(j) / n, buf);
    for (std::size_t k = 0; k < K; ++k) sum[k] += buf[k];
  }
  std::vector<cplx> prev(K), cur(K);
  for (std::size_t k = 0; k < K; ++k) prev[k] = sum[k] / double(n);
  for (;;) {
    if (2 * n > q.max_nodes) throw Error(Errc::QuadratureNotConverged, "theta quadrature did not converge");
    for (int j = 0; j < n; ++j) {
      f((2.0 * j + 1.0) / (2.0 * n), buf);
      for (std::size_t k = 0; k < K; ++k) sum[k] += buf[k];
    }
    n *= 2;
    double scale = 1.0, diff = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      cur[k] = sum[k] / double(n);
      scale = std::max(scale, std::abs(cur[k]));
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
    }
    if (diff <= q.tol * scale) {
      nodes_used = n;
      return cur;
    }
    prev = cur;
  }
}

}  // namespace

LocalMoments local_moments(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::ShiftSet& W,
                           const ThetaQuadrature& quad) {
  const std::size_t m = W.size();
  if (m > 12) throw Error(Errc::TooLarge, "moment table limited to 12 elements");
  const std::size_t K = std::size_t{1} << m;
  std::vector<cplx> Tn, Sn, Sv, Tv;
  for (const auto& s : S) Sv.push_back(s.value), Sn.push_back(-s.value);
  for (const auto& t : T) Tv.push_back(t.value), Tn.push_back(-t.value);
  std::vector<cplx> d(m);
  auto integrand = [&](double theta, std::vector<cplx>& out) {
    // A_{p,theta}(T^-, S^-; S, T)
    const cplx a = local_factor(p, theta, Tn, Sn, Sv, Tv);
    for (std::size_t i = 0; i < m; ++i)
      d[i] = W[i].side == comb::Side::Alpha ? zpt_logderiv(p, -theta, 0.5 + W[i].value)
                                            : zpt_logderiv(p, theta, 0.5 + W[i].value);
    out[0] = a;
    for (std::size_t mask = 1; mask < K; ++mask) {
      const int low = __builtin_ctzll(mask);
      out[mask] = out[mask & (mask - 1)] * d[low];
    }
  };
  LocalMoments lm;
  const auto raw = periodic_trapezoid(integrand, K, quad, lm.nodes_used);
  lm.integral = raw[0];
  if (std::abs(lm.integral) < 1e-12) throw Error(Errc::DenominatorNearZero, "theta integral of A_{p,theta} vanishes");
  lm.moment.resize(K);
  for (std::size_t k = 0; k < K; ++k) lm.moment[k] = raw[k] / lm.integral;
  return lm;
}

cplx c_ST(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::ShiftSet& X,
          const ThetaQuadrature& quad) {
  const auto lm = local_moments(p, S, T, X, quad);
  return lm.moment.back();
}

cplx H_p1(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::Block& W) {
  using comb::Side;
  if (W.size() == 1) {
    const auto& w = W[0];
    cplx acc = 0.0;
    if (w.side == Side::Alpha) {
      for (const auto& s : S) acc += zp_logderiv(p, 1.0 + w.value - s.value);
      for (const auto& t : T) acc -= zp_logderiv(p, 1.0 + w.value + t.value);
    } else {
      for (const auto& t : T) acc += zp_logderiv(p, 1.0 + w.value - t.value);
      for (const auto& s : S) acc -= zp_logderiv(p, 1.0 + w.value + s.value);
    }
    return acc;
  }
  if (W.size() == 2 && W[0].side != W[1].side) return zp_logderiv_prime(p, 1.0 + W[0].value + W[1].value);
  return 0.0;
}

cplx cumulant_from_moments(std::uint32_t block_mask, std::span<const cplx> moment) {
  std::vector<int> pos;
  for (int i = 0; i < 32; ++i)
    if (block_mask & (1u << i)) pos.push_back(i);
  const int m = static_cast<int>(pos.size());
  if (m == 0) return 1.0;
  static const double kSignedFact[] = {1.0, -1.0, 2.0, -6.0, 24.0, -120.0, 720.0, -5040.0};
  cplx acc = 0.0;
  for (const auto& part : comb::set_partition_masks(m)) {
    cplx prod = kSignedFact[part.size() - 1];
    for (auto local : part) {
      std::uint32_t global = 0;
      for (int i = 0; i < m; ++i)
        if (local & (1u << i)) global |= (1u << pos[i]);
      prod *= moment[global];
    }
    acc += prod;
  }
  return acc;
}

cplx H_p2(double p, const comb::ShiftSet& S, const comb::ShiftSet& T, const comb::Block& W,
          const ThetaQuadrature& quad) {
  const auto lm = local_moments(p, S, T, W, quad);
  return cumulant_from_moments((1u << W.size()) - 1u, lm.moment);
}

PrimeValue arithmetic_factor(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                             std::span<const cplx> D, const PrimeContext& ctx, const ThetaQuadrature& quad) {
  const auto& ps = ctx.primes();
  std::vector<double> mags(ps.size());
  cplx prod = 1.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double p = ps[i];
    int used = 0;
    auto integrand = [&](double theta, std::vector<cplx>& out) { out[0] = local_factor(p, theta, A, B, C, D); };
    const cplx integral = periodic_trapezoid(integrand, 1, quad, used)[0];
    const cplx local = Zp_ratio(p, A, B, C, D) * integral;
    mags[i] = std::abs(local - 1.0);
    prod *= local;
  }
  PrimeValue out{prod, 0.0};
  if (ctx.tail_policy() == TailPolicy::Estimate) out.tail_estimate = fit_tail(ps, mags, 0) * std::abs(prod);
  return out;
}

}  // namespace ncorr::primes
