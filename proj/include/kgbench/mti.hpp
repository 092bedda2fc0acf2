#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "kgbench/phi_functions.hpp"
#include "kgbench/problem.hpp"

namespace kgbench {

namespace mti_detail {

// e^{iy} with y accumulated in long double; the raw magnitudes reach
// τ/ε² ~ 1e8 where double ulp alone would cost ~1e-7 rad.
inline cplx expi(long double y) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double r = std::fmod(y, two_pi);
  return {std::cos(static_cast<double>(r)), std::sin(static_cast<double>(r))};
}

// φ1(iy), φ2(iy) for real y of arbitrary magnitude, phase-reduced.
inline std::pair<cplx, cplx> phi12_imag(long double y) {
  double yd = static_cast<double>(y);
  if (std::abs(yd) < 0.5) return {phi1(cplx(0, yd)), phi2(cplx(0, yd))};
  cplx e = expi(y);
  cplx iy(0.0, yd);
  cplx f1 = (e - 1.0) / iy;
  cplx f2 = (iy * e - e + 1.0) / (iy * iy);
  return {f1, f2};
}

inline std::vector<cplx> conj_reflect(const std::vector<cplx>& c) {
  const int N = static_cast<int>(c.size());
  std::vector<cplx> out(N);
  for (int k = 0; k < N; ++k) out[k] = std::conj(c[(N - k) % N]);
  return out;
}

// p, q, p', q' for the oscillatory kernels
//   p(s) = ∫_0^s sin(ω(s-θ))/(ε²ω) e^{k i θ/ε²} dθ  (q carries an extra θ),
// written through φ1/φ2 of the detunings δ∓ = k/ε² ∓ ω. δ- is evaluated as
// (k²-1-ε²μ²)/(ε²(k+√(1+ε²μ²))) so the resonant band ε²μ² ≈ k²-1 keeps all
// digits.
struct OscKernel {
  cplx p, q, dp, dq;
};

inline OscKernel osc_kernel(double eps, double s, double mu, int k) {
  const long double e2 = static_cast<long double>(eps) * eps;
  const long double m2 = static_cast<long double>(mu) * mu;
  const long double sq = std::sqrt(1.0L + e2 * m2);
  const long double w = sq / e2;
  const long double dminus =
      (static_cast<long double>(k) * k - 1.0L - e2 * m2) / (e2 * (k + sq));
  const long double dplus = (k + sq) / e2;
  const long double sl = s;

  auto [f1m, f2m] = phi12_imag(sl * dminus);
  auto [f1p, f2p] = phi12_imag(sl * dplus);
  cplx eiw = expi(sl * w);
  cplx emw = std::conj(eiw);
  const double e2w = static_cast<double>(e2 * w);
  const cplx i2ew(0.0, 2.0 * e2w);
  OscKernel r;
  r.p = (eiw * (s * f1m) - emw * (s * f1p)) / i2ew;
  r.q = (eiw * (s * s * f2m) - emw * (s * s * f2p)) / i2ew;
  r.dp = (eiw * (s * f1m) + emw * (s * f1p)) /
         (2.0 * static_cast<double>(e2));
  r.dq = (eiw * (s * s * f2m) + emw * (s * s * f2p)) /
         (2.0 * static_cast<double>(e2));
  return r;
}

}  // namespace mti_detail

// Per-mode coefficient functions of the multiscale integrator: the NLSW-part
// kernels a,b,c,d (λ± = -(1 ± √(1+μ²ε²))/ε²) and the remainder-part kernels
// p,q, all with their s-derivatives evaluated at s = τ.
struct MtiKernelTable {
  std::vector<cplx> a, b, c, d;      // z-update
  std::vector<cplx> ap, bp, cp, dp;  // its derivative row
  std::vector<cplx> p, q, pp, qp;    // r-update (k = 3 oscillation)
  std::vector<double> omega, cos_wt, sinc_wt;  // cos(ωτ), sin(ωτ)/ω
  cplx phase1, phase2;  // e^{iτ/ε²}, e^{2iτ/ε²}
  double tau = 0.0;
  NkgeParams prm;
};

inline MtiKernelTable build_mti_kernels(const NkgeParams& p, double tau,
                                        const Grid1d& g) {
  if (!(tau > 0.0)) throw dimension_error("mti kernels: tau must be positive");
  MtiKernelTable t;
  t.tau = tau;
  t.prm = p;
  const int N = g.N;
  t.a.resize(N);
  t.b.resize(N);
  t.c.resize(N);
  t.d.resize(N);
  t.ap.resize(N);
  t.bp.resize(N);
  t.cp.resize(N);
  t.dp.resize(N);
  t.p.resize(N);
  t.q.resize(N);
  t.pp.resize(N);
  t.qp.resize(N);
  t.omega.resize(N);
  t.cos_wt.resize(N);
  t.sinc_wt.resize(N);

  const long double e2 = static_cast<long double>(p.eps) * p.eps;
  for (int k = 0; k < N; ++k) {
    const double mu = g.wavenumbers[k];
    const long double m2 = static_cast<long double>(mu) * mu;
    const long double sq = std::sqrt(1.0L + e2 * m2);
    const long double lm = m2 / (1.0L + sq);        // λ⁻ = D_ε(μ) ≥ 0
    const long double lp = -(1.0L + sq) / e2;       // λ⁺ ≤ -2/ε²
    const double w = static_cast<double>(sq / e2);  // ω = (λ⁻-λ⁺)/2

    cplx em = mti_detail::expi(tau * lm);  // e^{iτλ⁻}
    cplx ep = mti_detail::expi(tau * lp);  // e^{iτλ⁺}
    const double twosq = 2.0 * static_cast<double>(sq);  // ε²(λ⁻-λ⁺)
    const double lpd = static_cast<double>(lp), lmd = static_cast<double>(lm);

    t.a[k] = (lpd * em - lmd * ep) / (-2.0 * w);
    t.b[k] = cplx(0, 1) * (ep - em) / twosq;
    // λ⁺λ⁻ = -μ²/ε² exactly (product of the characteristic roots)
    t.ap[k] = cplx(0, 1) * (-mu * mu / static_cast<double>(e2)) * (em - ep) /
              (-2.0 * w);
    t.bp[k] = (lpd * ep - lmd * em) / (-static_cast<double>(e2) * 2.0 * w);

    auto [f1p, f2p] = mti_detail::phi12_imag(tau * lp);
    auto [f1m, f2m] = mti_detail::phi12_imag(tau * lm);
    t.c[k] = cplx(0, tau) * (f1p - f1m) / twosq;
    t.d[k] = tau * t.c[k] - cplx(0, tau * tau) * (f2p - f2m) / twosq;
    t.cp[k] = t.b[k];
    t.dp[k] = t.c[k];

    auto osc = mti_detail::osc_kernel(p.eps, tau, mu, 3);
    t.p[k] = osc.p;
    t.q[k] = osc.q;
    t.pp[k] = osc.dp;
    t.qp[k] = osc.dq;

    t.omega[k] = w;
    cplx ew = mti_detail::expi(tau * static_cast<long double>(sq) / e2);
    t.cos_wt[k] = ew.real();
    t.sinc_wt[k] = ew.imag() / w;
  }
  t.phase1 = mti_detail::expi(static_cast<long double>(tau) / e2);
  t.phase2 = t.phase1 * t.phase1;
  return t;
}

struct MtiState {
  std::vector<double> u, du;
  long n = 0;
  NkgeParams p;
  Grid1d grid;
};

inline MtiState mti_init(const InitialData& data, const NkgeParams& p,
                         const Grid1d& g) {
  MtiState s;
  s.p = p;
  s.grid = g;
  s.n = 0;
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();
  s.u.resize(g.N);
  s.du.resize(g.N);
  const double ie2 = 1.0 / (p.eps * p.eps);
  for (int j = 0; j < g.N; ++j) {
    s.u[j] = p1.values[j].real();
    s.du[j] = p2.values[j].real() * ie2;
  }
  return s;
}

// One step of MTI-FP: decompose (u,u̇) at t_n into the z-profile and its
// time derivative, propagate (z,ż) and the remainder pair (r,ṙ) by the
// kernel table, apply the w^{n+1} correction (one fixed-point pass: r^{n+1}
// is formed first, then w, then ṙ^{n+1}), and reassemble (u,u̇) at t_{n+1}.
inline MtiState step_mti(const MtiState& s, const MtiKernelTable& kt) {
  const int N = s.grid.N;
  const double eps2 = s.p.eps * s.p.eps;
  const double lam = s.p.lambda;
  const double tau = kt.tau;

  std::vector<cplx> z1(N), eta1(N), gg1(N);
  for (int j = 0; j < N; ++j) {
    cplx z = 0.5 * (s.u[j] - cplx(0, 1) * eps2 * s.du[j]);
    z1[j] = z;
    eta1[j] = 3.0 * lam * std::norm(z) * z;
    gg1[j] = lam * z * z * z;
  }
  std::vector<cplx> z1c = z1, eta1c = eta1;
  to_fourier(z1c);
  to_fourier(eta1c);
  std::vector<cplx> dz1c(N);
  for (int k = 0; k < N; ++k) {
    double mu = s.grid.wavenumbers[k];
    dz1c[k] = cplx(0, 0.5) * (mu * mu * z1c[k] + eta1c[k]);
  }
  std::vector<cplx> dz1 = dz1c;
  to_nodal(dz1);

  std::vector<cplx> deta1(N), dg1(N), dr1(N);
  for (int j = 0; j < N; ++j) {
    cplx z = z1[j], dz = dz1[j];
    deta1[j] = 6.0 * lam * z * (std::conj(z) * dz).real() +
               3.0 * lam * dz * std::norm(z);
    dg1[j] = 3.0 * lam * z * z * dz;
    dr1[j] = -2.0 * dz.real();
  }
  to_fourier(deta1);
  to_fourier(dg1);
  to_fourier(dr1);
  to_fourier(gg1);
  auto gg1_cj = mti_detail::conj_reflect(gg1);
  auto dg1_cj = mti_detail::conj_reflect(dg1);

  std::vector<cplx> znc(N), dznc(N), rnc(N);
  for (int k = 0; k < N; ++k) {
    znc[k] = kt.a[k] * z1c[k] + eps2 * kt.b[k] * dz1c[k] -
             kt.c[k] * eta1c[k] - kt.d[k] * deta1[k];
    dznc[k] = kt.ap[k] * z1c[k] + eps2 * kt.bp[k] * dz1c[k] -
              kt.cp[k] * eta1c[k] - kt.dp[k] * deta1[k];
    rnc[k] = kt.sinc_wt[k] * dr1[k] - kt.p[k] * gg1[k] - kt.q[k] * dg1[k] -
             std::conj(kt.p[k]) * gg1_cj[k] - std::conj(kt.q[k]) * dg1_cj[k];
  }
  std::vector<cplx> zn = znc, dzn = dznc, rn = rnc;
  to_nodal(zn);
  to_nodal(dzn);
  to_nodal(rn);

  std::vector<cplx> w(N);
  for (int j = 0; j < N; ++j) {
    cplx z = zn[j], r = rn[j];
    cplx z2 = z * z;
    w[j] = 3.0 * lam * r * (kt.phase2 * z2 + std::conj(kt.phase2 * z2)) +
           3.0 * lam * r * r * (kt.phase1 * z + std::conj(kt.phase1 * z)) +
           6.0 * lam * std::norm(z) * r + lam * r * r * r;
  }
  to_fourier(w);

  MtiState out = s;
  out.n = s.n + 1;
  std::vector<cplx> drn(N);
  for (int k = 0; k < N; ++k) {
    drn[k] = kt.cos_wt[k] * dr1[k] - kt.pp[k] * gg1[k] - kt.qp[k] * dg1[k] -
             std::conj(kt.pp[k]) * gg1_cj[k] -
             std::conj(kt.qp[k]) * dg1_cj[k] -
             tau / (2.0 * eps2) * w[k];
  }
  to_nodal(drn);

  for (int j = 0; j < N; ++j) {
    out.u[j] = 2.0 * (kt.phase1 * zn[j]).real() + rn[j].real();
    out.du[j] =
        2.0 * (kt.phase1 * (dzn[j] + cplx(0, 1) / eps2 * zn[j])).real() +
        drn[j].real();
    if (!std::isfinite(out.u[j]) || std::abs(out.u[j]) > kBlowupThreshold)
      throw blowup_error("mti-fp: solution blow-up", static_cast<int>(out.n));
  }
  return out;
}

}  // namespace kgbench
