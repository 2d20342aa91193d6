#include "ncorr/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "ncorr/error.hpp"
#include "ncorr/numerics.hpp"

namespace ncorr::rmt {

namespace {

using comb::Shift;
using comb::Side;

std::string fmt_c(cplx z) { return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")"; }

// Z(X, Y) = prod z(x + y)
cplx Zprod(std::span<const cplx> X, std::span<const cplx> Y) {
  cplx out = 1.0;
  for (auto x : X)
    for (auto y : Y) out *= num::z(x + y);
  return out;
}

// prod over ordered pairs of distinct elements of z(s - s')
cplx Zdagger(const ShiftSet& S) {
  cplx out = 1.0;
  for (const auto& a : S)
    for (const auto& b : S)
      if (a.label != b.label) out *= num::z(a.value - b.value);
  return out;
}

void check_opposite_collisions(const ShiftSet& A, const ShiftSet& B, double tol) {
  for (const auto& a : A)
    for (const auto& b : B)
      if (std::abs(a.value + b.value) < tol)
        throw Error(Errc::PoleCollision, "alpha + beta = 0 at alpha=" + fmt_c(a.value) + " beta=" + fmt_c(b.value));
}

bool has_same_side_collision(const ShiftSet& X, double tol) {
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (std::abs(X[i].value - X[j].value) < tol) return true;
  return false;
}

// Spread clusters of (numerically) equal values to c + delta (j - (k-1)/2).
ShiftSet spread(const ShiftSet& X, double tol, double delta) {
  ShiftSet out = X;
  std::vector<bool> done(X.size(), false);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> cluster{i};
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (!done[j] && std::abs(X[i].value - X[j].value) < tol) cluster.push_back(j);
    const double k = double(cluster.size());
    for (std::size_t r = 0; r < cluster.size(); ++r) {
      done[cluster[r]] = true;
      if (cluster.size() > 1) out[cluster[r]].value = X[i].value + delta * (double(r) - (k - 1.0) / 2.0);
    }
  }
  return out;
}

cplx sum_shifts(const ShiftSet& X) {
  cplx s = 0.0;
  for (const auto& x : X) s += x.value;
  return s;
}

// H_{S,T}(W) for singletons and mixed pairs; zero otherwise.
cplx H_block(const ShiftSet& S, const ShiftSet& T, const Shift* w0, const Shift* w1) {
  if (w1 == nullptr) {
    cplx acc = 0.0;
    if (w0->side == Side::Alpha) {
      for (const auto& s : S) acc += num::z_logderiv(w0->value - s.value);
      for (const auto& t : T) acc -= num::z_logderiv(w0->value + t.value);
    } else {
      for (const auto& t : T) acc += num::z_logderiv(w0->value - t.value);
      for (const auto& s : S) acc -= num::z_logderiv(w0->value + s.value);
    }
    return acc;
  }
  if (w0->side == w1->side) return 0.0;
  return num::z_logderiv_prime(w0->value + w1->value);
}

cplx jstar_direct(const ShiftSet& A, const ShiftSet& B, int N) {
  cplx total = 0.0;
  for (const auto& sp : comb::enumerate_subset_pairs(A, B)) {
    std::vector<cplx> sv, tv, sn, tn;
    for (const auto& s : sp.S) sv.push_back(s.value), sn.push_back(-s.value);
    for (const auto& t : sp.T) tv.push_back(t.value), tn.push_back(-t.value);
    const cplx Q = std::exp(-double(N) * (sum_shifts(sp.S) + sum_shifts(sp.T))) * Zprod(sv, tv) * Zprod(sn, tn) /
                   (Zdagger(sp.S) * Zdagger(sp.T));

    ShiftSet W = sp.Sbar;
    W.insert(W.end(), sp.Tbar.begin(), sp.Tbar.end());
    std::unordered_map<std::uint32_t, cplx> memo;
    auto H = [&](std::uint32_t mask) {
      auto it = memo.find(mask);
      if (it != memo.end()) return it->second;
      const Shift* w0 = nullptr;
      const Shift* w1 = nullptr;
      for (std::size_t i = 0; i < W.size(); ++i)
        if (mask & (1u << i)) (w0 ? w1 : w0) = &W[i];
      const cplx v = H_block(sp.S, sp.T, w0, w1);
      memo.emplace(mask, v);
      return v;
    };
    cplx inner = 0.0;
    for (const auto& part :
         comb::admissible_partition_masks(static_cast<int>(sp.Sbar.size()), static_cast<int>(sp.Tbar.size()))) {
      cplx prod = 1.0;
      for (auto m : part) {
        prod *= H(m);
        if (prod == 0.0) break;
      }
      inner += prod;
    }
    total += Q * inner;
  }
  return total;
}

}  // namespace

cplx ratios_average(std::span<const cplx> A, std::span<const cplx> B, std::span<const cplx> C,
                    std::span<const cplx> D, int N) {
  if (N < 1) throw Error(Errc::InvalidArgument, "matrix size must be >= 1");
  for (auto g : C)
    if (!(g.real() > 0)) throw Error(Errc::SideConditionViolated, "Re gamma must be positive");
  for (auto d : D)
    if (!(d.real() > 0)) throw Error(Errc::SideConditionViolated, "Re delta must be positive");
  if (C.size() > A.size() + N || D.size() > B.size() + N)
    throw Error(Errc::SideConditionViolated, "need |C| <= |A| + N and |D| <= |B| + N");

  const ShiftSet As = comb::make_shifts(A, Side::Alpha), Bs = comb::make_shifts(B, Side::Beta);
  cplx total = 0.0;
  try {
    for (const auto& sp : comb::enumerate_subset_pairs(As, Bs)) {
      // Z(Sbar + T^-, Tbar + S^-; C, D)
      std::vector<cplx> X, Y;
      for (const auto& a : sp.Sbar) X.push_back(a.value);
      for (const auto& t : sp.T) X.push_back(-t.value);
      for (const auto& b : sp.Tbar) Y.push_back(b.value);
      for (const auto& s : sp.S) Y.push_back(-s.value);
      const cplx Zr = Zprod(X, Y) * Zprod(C, D) / (Zprod(X, D) * Zprod(Y, C));
      total += std::exp(-double(N) * (sum_shifts(sp.S) + sum_shifts(sp.T))) * Zr;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::PoleAtZero) throw Error(Errc::PoleCollision, std::string("ratios_average: ") + e.what());
    throw;
  }
  return total;
}

cplx jstar(const ShiftSet& A, const ShiftSet& B, int N, const JstarOptions& opt) {
  if (N < 1) throw Error(Errc::InvalidArgument, "matrix size must be >= 1");
  check_opposite_collisions(A, B, opt.collision_tol);
  const bool coll = has_same_side_collision(A, opt.collision_tol) || has_same_side_collision(B, opt.collision_tol);
  try {
    if (!coll) return jstar_direct(A, B, N);
    if (!opt.paired_perturbation)
      throw Error(Errc::PoleCollision, "equal same-side shifts (enable paired perturbation to take the limit)");
    const double d = opt.perturbation;
    const cplx j1 = jstar_direct(spread(A, opt.collision_tol, d), spread(B, opt.collision_tol, d), N);
    const cplx j2 = jstar_direct(spread(A, opt.collision_tol, 2 * d), spread(B, opt.collision_tol, 2 * d), N);
    return (4.0 * j1 - j2) / 3.0;
  } catch (const Error& e) {
    if (e.code() == Errc::PoleAtZero) throw Error(Errc::PoleCollision, std::string("jstar: ") + e.what());
    throw;
  }
}

cplx jstar(std::span<const cplx> A, std::span<const cplx> B, int N, const JstarOptions& opt) {
  return jstar(comb::make_shifts(A, Side::Alpha), comb::make_shifts(B, Side::Beta), N, opt);
}

double correlation_rmt(std::span<const double> thetas, int N, const CorrelationOptions& opt) {
  const int n = static_cast<int>(thetas.size());
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one angle");
  if (n > comb::kMaxTripartitionSize) throw Error(Errc::TooLarge, "n above the tripartition guard");
  if (!opt.near_collision_probe) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(std::remainder(thetas[i] - thetas[j], kTwoPi)) < opt.collision_tol)
          throw Error(Errc::PoleCollision, "angles " + std::to_string(i) + " and " + std::to_string(j) + " collide");
  }
  JstarOptions jo;
  jo.collision_tol = 0.0;
  const cplx I{0.0, 1.0};
  cplx total = 0.0;
  double scale = 0.0;
  for (const auto& tp : comb::enumerate_tripartitions(n)) {
    ShiftSet A, B;
    for (int k : tp.K) A.push_back({k, -I * thetas[k], Side::Alpha});
    for (int l : tp.L) B.push_back({l, I * thetas[l], Side::Beta});
    const cplx term = std::pow(double(N), double(tp.M.size())) * jstar(A, B, N, jo);
    total += term;
    scale += std::abs(term);
  }
  if (std::abs(total.imag()) > 1e-8 * std::max(1.0, std::abs(total.real())) + 1e-12 * scale)
    throw Error(Errc::ImaginaryResidue, "imaginary part " + std::to_string(total.imag()) + " in assembled correlation");
  return total.real();
}

double determinant_oracle(std::span<const double> thetas, int N) {
  const int n = static_cast<int>(thetas.size());
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) M(j, k) = num::sine_kernel(N, thetas[j] - thetas[k]);
  return M.fullPivLu().determinant();
}

ResidueReport residue_check(const ShiftSet& A, const ShiftSet& B, int star_a, int star_b, int N,
                            const LaurentProbe& probe) {
  auto ia = std::find_if(A.begin(), A.end(), [&](const Shift& s) { return s.label == star_a; });
  auto ib = std::find_if(B.begin(), B.end(), [&](const Shift& s) { return s.label == star_b; });
  if (ia == A.end() || ib == B.end()) throw Error(Errc::InvalidArgument, "starred labels not found");
  const std::size_t pa = ia - A.begin();
  const cplx beta_star = ib->value;
  const cplx center = -beta_star;

  JstarOptions jo;
  jo.collision_tol = 0.0;
  auto f = [&](cplx alpha) {
    ShiftSet Ax = A;
    Ax[pa].value = alpha;
    return jstar(Ax, B, N, jo);
  };
  const auto [c1, c2] = laurent_coefficients(f, center, probe);
  LaurentProbe wide = probe;
  wide.radius *= 2.0;
  const auto [w1, w2] = laurent_coefficients(f, center, wide);
  (void)w2;
  if (std::abs(c1 - w1) > 1e-6 * std::max(1.0, std::abs(c1)))
    throw Error(Errc::ProbeNotIsolated, "residue changes between probe radii r and 2r");

  ShiftSet Ap, Bp;
  for (const auto& s : A)
    if (s.label != star_a) Ap.push_back(s);
  for (const auto& s : B)
    if (s.label != star_b) Bp.push_back(s);
  ShiftSet Aplus = Ap;
  Aplus.push_back({star_a, -beta_star, Side::Alpha});

  ResidueReport r;
  r.lhs = c1;
  r.double_pole = c2;
  r.rhs = double(N) * jstar(Ap, Bp, N, jo) + jstar(Ap, B, N, jo) + jstar(Aplus, Bp, N, jo);
  r.abs_error = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace ncorr::rmt
