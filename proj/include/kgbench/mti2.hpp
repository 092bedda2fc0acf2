#pragma once

#include <cmath>
#include <vector>

#include "kgbench/mti.hpp"
#include "kgbench/phi_functions.hpp"
#include "kgbench/problem.hpp"

namespace kgbench {

// Higher-order multiscale integrator: NLSW profile v with a quintic-corrected
// nonlinearity plus the O(ε²) remainder R solving an NKGE with small data.
// The n-dependent phase of the oscillatory kernels p_{l,k}^n factors out, so
// only the t_n = 0 kernels are tabulated.
struct Mti2KernelTable {
  std::vector<cplx> a, b, c, d, ap, bp, cp, dp;  // NLSW kernels
  std::vector<cplx> p3, q3, pp3, qp3;            // k = 3 oscillation, t_n = 0
  std::vector<cplx> p5, q5, pp5, qp5;            // k = 5
  std::vector<double> omega, cos_wt, sin_wt, sinc_wt;
  double tau = 0.0;
  NkgeParams prm;
  PhaseTracker phase;
};

inline Mti2KernelTable build_mti2_kernels(const NkgeParams& p, double tau,
                                          const Grid1d& g) {
  Mti2KernelTable t;
  MtiKernelTable base = build_mti_kernels(p, tau, g);
  t.a = std::move(base.a);
  t.b = std::move(base.b);
  t.c = std::move(base.c);
  t.d = std::move(base.d);
  t.ap = std::move(base.ap);
  t.bp = std::move(base.bp);
  t.cp = std::move(base.cp);
  t.dp = std::move(base.dp);
  t.omega = std::move(base.omega);
  t.cos_wt = std::move(base.cos_wt);
  t.sinc_wt = std::move(base.sinc_wt);
  t.tau = tau;
  t.prm = p;
  t.phase = PhaseTracker(tau / (p.eps * p.eps));
  const int N = g.N;
  t.p3.resize(N);
  t.q3.resize(N);
  t.pp3.resize(N);
  t.qp3.resize(N);
  t.p5.resize(N);
  t.q5.resize(N);
  t.pp5.resize(N);
  t.qp5.resize(N);
  t.sin_wt.resize(N);
  for (int k = 0; k < N; ++k) {
    double mu = g.wavenumbers[k];
    auto o3 = mti_detail::osc_kernel(p.eps, tau, mu, 3);
    auto o5 = mti_detail::osc_kernel(p.eps, tau, mu, 5);
    t.p3[k] = o3.p;
    t.q3[k] = o3.q;
    t.pp3[k] = o3.dp;
    t.qp3[k] = o3.dq;
    t.p5[k] = o5.p;
    t.q5[k] = o5.q;
    t.pp5[k] = o5.dp;
    t.qp5[k] = o5.dq;
    t.sin_wt[k] = t.sinc_wt[k] * t.omega[k];
  }
  return t;
}

struct Mti2State {
  std::vector<cplx> v, dv;
  std::vector<double> R, dR;
  std::vector<cplx> g_prev;  // coefficients of g^{n-1}, empty at n = 0
  long n = 0;
  NkgeParams p;
  Grid1d grid;
};

// w0 = (φ1 - iφ2)/2; v0 = w0 + ε² r0; R starts at O(ε²) with the
// cancellations that make the t = 0 reconstruction reproduce φ1 exactly.
inline Mti2State mti2_initialize(const InitialData& data, const NkgeParams& p,
                                 const Grid1d& g) {
  Mti2State s;
  s.p = p;
  s.grid = g;
  s.n = 0;
  const int N = g.N;
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();

  std::vector<cplx> w0(N);
  for (int j = 0; j < N; ++j)
    w0[j] = 0.5 * (p1.values[j] - cplx(0, 1) * p2.values[j]);

  std::vector<cplx> lap = w0;
  to_fourier(lap);
  for (int k = 0; k < N; ++k) {
    double mu = g.wavenumbers[k];
    lap[k] *= -mu * mu;
  }
  to_nodal(lap);

  const double lam = p.lambda, e2 = p.eps * p.eps;
  s.v.resize(N);
  s.dv.resize(N);
  s.R.resize(N);
  s.dR.resize(N);
  for (int j = 0; j < N; ++j) {
    cplx w = w0[j];
    cplx v1 = cplx(0, 0.5) * (-lap[j] + 3.0 * lam * std::norm(w) * w);
    cplx wb = std::conj(w);
    cplx r0 = lam / 8.0 * wb * wb * wb - lam / 4.0 * w * w * w +
              cplx(0, 1) * v1.real();
    cplx v0 = w + e2 * r0;
    cplx r1 = r0 * (v0 * v0 + v0 * w + w * w);
    s.v[j] = v0;
    s.dv[j] = v1;
    s.R[j] = -lam * e2 / 4.0 * r1.real();
    s.dR[j] = -0.75 * lam * (v0 * v0 * v1).real() + 0.75 * lam * r1.imag();
  }
  return s;
}

namespace mti2_detail {

inline std::vector<cplx> g_nonlinearity(const std::vector<cplx>& v,
                                        const NkgeParams& p, bool quintic) {
  std::vector<cplx> g(v.size());
  const double lam = p.lambda, e2 = p.eps * p.eps;
  for (size_t j = 0; j < v.size(); ++j) {
    double a2 = std::norm(v[j]);
    double f = 3.0 * (lam * a2 + (quintic ? e2 * lam * lam / 8.0 * a2 * a2 : 0.0));
    g[j] = f * v[j];
  }
  return g;
}

// D^n = F_v + F_R: the residual oscillatory sources of the R-equation,
// evaluated nodally with phases e^{ikθ}.
inline std::vector<double> source_D(const std::vector<cplx>& v,
                                    const std::vector<cplx>& dv,
                                    const std::vector<cplx>& ddv,
                                    const std::vector<double>& R,
                                    double theta, const NkgeParams& p) {
  const int N = static_cast<int>(v.size());
  const double lam = p.lambda, e2 = p.eps * p.eps, e4 = e2 * e2;
  cplx e1 = unit_phase(theta);
  cplx e2t = unit_phase(harmonic_phase(theta, 2));
  cplx e3 = unit_phase(harmonic_phase(theta, 3));
  cplx e4t = unit_phase(harmonic_phase(theta, 4));
  cplx e5 = unit_phase(harmonic_phase(theta, 5));
  cplx e6 = unit_phase(harmonic_phase(theta, 6));
  cplx e7 = unit_phase(harmonic_phase(theta, 7));
  cplx e9 = unit_phase(harmonic_phase(theta, 9));
  std::vector<double> D(N);
  for (int j = 0; j < N; ++j) {
    cplx vj = v[j], dvj = dv[j];
    double a2 = std::norm(vj);
    double a6 = a2 * a2 * a2;
    cplx v2 = vj * vj, v3 = v2 * vj, v4 = v2 * v2, v5 = v4 * vj;
    cplx v6 = v3 * v3, v7 = v6 * vj, v9 = v6 * v3;
    double r = R[j];
    cplx Fv = e1 * (3.0 * lam * lam / 32.0 * e2 * a6 * vj) +
              e3 * (0.75 * e2 * vj * dvj * dvj + 0.375 * e2 * v2 * ddv[j] +
                    3.0 * lam * lam * lam / 512.0 * e4 * a6 * v3) +
              e5 * (3.0 * lam * lam / 64.0 * e2 * a2 * v5) +
              e7 * (3.0 * lam * lam / 64.0 * e2 * v7) +
              e9 * (lam * lam * lam / 512.0 * e4 * v9);
    cplx FR = e2t * ((3.0 + 0.75 * lam * e2 * a2) * v2 * r) +
              e1 * (3.0 * e2 * vj * r * r) +
              e6 * (3.0 * lam * lam / 64.0 * e4 * v6 * r) +
              e3 * (3.0 * lam / 8.0 * e4 * v3 * r * r) +
              e4t * (0.75 * lam * e2 * v4 * r);
    D[j] = 2.0 * (Fv + FR).real() + 6.0 * a2 * r + e4 * r * r * r +
           3.0 * lam * lam / 32.0 * e4 * a6 * r;
  }
  return D;
}

}  // namespace mti2_detail

inline Mti2State step_mti2(const Mti2State& s, const Mti2KernelTable& kt) {
  const int N = s.grid.N;
  const double lam = s.p.lambda, e2 = s.p.eps * s.p.eps;
  const double tau = kt.tau;
  const double theta_n = kt.phase.at_step(s.n);

  auto g = mti2_detail::g_nonlinearity(s.v, s.p, true);
  std::vector<cplx> gc = g;
  to_fourier(gc);
  std::vector<cplx> vc = s.v, dvc = s.dv;
  to_fourier(vc);
  to_fourier(dvc);

  // NLSW profile update (two-branch: g-difference term only from n >= 1)
  std::vector<cplx> vn(N), dvn(N);
  for (int k = 0; k < N; ++k) {
    cplx gdiff = s.n >= 1 ? (gc[k] - s.g_prev[k]) / tau : cplx(0.0);
    vn[k] = kt.a[k] * vc[k] + e2 * kt.b[k] * dvc[k] - kt.c[k] * gc[k] -
            kt.d[k] * gdiff;
    dvn[k] = kt.ap[k] * vc[k] + e2 * kt.bp[k] * dvc[k] - kt.cp[k] * gc[k] -
             kt.dp[k] * gdiff;
  }

  // v̈ⁿ from the NLSW equation itself
  std::vector<cplx> lap(N);
  for (int k = 0; k < N; ++k) {
    double mu = s.grid.wavenumbers[k];
    lap[k] = -mu * mu * vc[k];
  }
  to_nodal(lap);
  std::vector<cplx> ddv(N);
  for (int j = 0; j < N; ++j)
    ddv[j] = -(2.0 * cplx(0, 1) * s.dv[j] - lap[j] + g[j]) / e2;

  // G3, G5 and their time derivatives
  std::vector<cplx> v3(N), dv_v2(N);
  for (int j = 0; j < N; ++j) {
    v3[j] = s.v[j] * s.v[j] * s.v[j];
    dv_v2[j] = s.dv[j] * s.v[j] * s.v[j];
  }
  std::vector<cplx> lap_v3 = v3, lap_dvv2 = dv_v2;
  to_fourier(lap_v3);
  to_fourier(lap_dvv2);
  for (int k = 0; k < N; ++k) {
    double mu = s.grid.wavenumbers[k];
    lap_v3[k] *= -mu * mu;
    lap_dvv2[k] *= -mu * mu;
  }
  to_nodal(lap_v3);
  to_nodal(lap_dvv2);

  std::vector<cplx> G3(N), G5(N), dG3(N), dG5(N);
  for (int j = 0; j < N; ++j) {
    cplx vj = s.v[j], dvj = s.dv[j], vb = std::conj(vj);
    double a2 = std::norm(vj);
    cplx v2 = vj * vj;
    G3[j] = 0.75 * lam * a2 * v2 * vj + cplx(0, 2.25) * v2 * dvj -
            0.125 * lap_v3[j];
    G5[j] = 0.375 * lam * v2 * v2 * vj;
    dG3[j] = 0.75 * lam * (4.0 * v2 * vj * dvj * vb + v2 * v2 * std::conj(dvj)) +
             cplx(0, 2.25) * (2.0 * vj * dvj * dvj + v2 * ddv[j]) -
             0.375 * lap_dvv2[j];
    dG5[j] = 15.0 / 8.0 * lam * v2 * v2 * dvj;
  }
  auto D_n =
      mti2_detail::source_D(s.v, s.dv, ddv, s.R, theta_n, s.p);

  std::vector<cplx> G3c = G3, G5c = G5, dG3c = dG3, dG5c = dG5;
  to_fourier(G3c);
  to_fourier(G5c);
  to_fourier(dG3c);
  to_fourier(dG5c);
  auto G3cj = mti_detail::conj_reflect(G3c);
  auto G5cj = mti_detail::conj_reflect(G5c);
  auto dG3cj = mti_detail::conj_reflect(dG3c);
  auto dG5cj = mti_detail::conj_reflect(dG5c);
  std::vector<cplx> Rc(s.R.begin(), s.R.end());
  std::vector<cplx> dRc(s.dR.begin(), s.dR.end());
  std::vector<cplx> Dc(D_n.begin(), D_n.end());
  to_fourier(Rc);
  to_fourier(dRc);
  to_fourier(Dc);

  const cplx ph3 = unit_phase(harmonic_phase(theta_n, 3));
  const cplx ph5 = unit_phase(harmonic_phase(theta_n, 5));
  std::vector<cplx> Rn(N);
  for (int k = 0; k < N; ++k) {
    cplx p3 = lam * ph3 * kt.p3[k], q3 = lam * ph3 * kt.q3[k];
    cplx p5 = lam * ph5 * kt.p5[k], q5 = lam * ph5 * kt.q5[k];
    Rn[k] = kt.cos_wt[k] * Rc[k] + kt.sinc_wt[k] * dRc[k] -
            p3 * G3c[k] - q3 * dG3c[k] - std::conj(p3) * G3cj[k] -
            std::conj(q3) * dG3cj[k] - p5 * G5c[k] - q5 * dG5c[k] -
            std::conj(p5) * G5cj[k] - std::conj(q5) * dG5cj[k] -
            tau * lam / (2.0 * e2) * kt.sinc_wt[k] * Dc[k];
  }

  Mti2State out = s;
  out.n = s.n + 1;
  out.g_prev = gc;
  std::vector<cplx> vn_nodal = vn, dvn_nodal = dvn, Rn_nodal = Rn;
  to_nodal(vn_nodal);
  to_nodal(dvn_nodal);
  to_nodal(Rn_nodal);
  out.v = vn_nodal;
  out.dv = dvn_nodal;
  for (int j = 0; j < N; ++j) out.R[j] = Rn_nodal[j].real();

  // one fixed-point pass: D^{n+1} from the freshly updated (v, v̇, R)
  std::vector<cplx> lap1 = vn;
  for (int k = 0; k < N; ++k) {
    double mu = s.grid.wavenumbers[k];
    lap1[k] *= -mu * mu;
  }
  to_nodal(lap1);
  auto g1 = mti2_detail::g_nonlinearity(out.v, s.p, true);
  std::vector<cplx> ddv1(N);
  for (int j = 0; j < N; ++j)
    ddv1[j] = -(2.0 * cplx(0, 1) * out.dv[j] - lap1[j] + g1[j]) / e2;
  const double theta_np1 = kt.phase.at_step(out.n);
  auto D_np1 =
      mti2_detail::source_D(out.v, out.dv, ddv1, out.R, theta_np1, s.p);
  std::vector<cplx> Dc1(D_np1.begin(), D_np1.end());
  to_fourier(Dc1);

  std::vector<cplx> dRn(N);
  for (int k = 0; k < N; ++k) {
    cplx p3 = lam * ph3 * kt.pp3[k], q3 = lam * ph3 * kt.qp3[k];
    cplx p5 = lam * ph5 * kt.pp5[k], q5 = lam * ph5 * kt.qp5[k];
    dRn[k] = -kt.sin_wt[k] * Rc[k] + kt.cos_wt[k] * dRc[k] - p3 * G3c[k] -
             q3 * dG3c[k] - std::conj(p3) * G3cj[k] -
             std::conj(q3) * dG3cj[k] - p5 * G5c[k] - q5 * dG5c[k] -
             std::conj(p5) * G5cj[k] - std::conj(q5) * dG5cj[k] -
             tau * lam / (2.0 * e2) * (kt.cos_wt[k] * Dc[k] + Dc1[k]);
  }
  to_nodal(dRn);
  for (int j = 0; j < N; ++j) {
    out.dR[j] = dRn[j].real();
    if (!std::isfinite(out.R[j]) || std::abs(out.R[j]) > kBlowupThreshold ||
        !std::isfinite(out.v[j].real()) ||
        std::abs(out.v[j]) > kBlowupThreshold)
      throw blowup_error("mti-fp2: solution blow-up", static_cast<int>(out.n));
  }
  return out;
}

// u, u̇ at t_n from the multiscale expansion with the third-harmonic
// correction and the ε²R remainder.
inline std::pair<std::vector<double>, std::vector<double>> mti2_reconstruct(
    const Mti2State& s, const Mti2KernelTable& kt) {
  const int N = s.grid.N;
  const double lam = s.p.lambda, e2 = s.p.eps * s.p.eps;
  const double theta = kt.phase.at_step(s.n);
  cplx e1 = unit_phase(theta);
  cplx e3 = unit_phase(harmonic_phase(theta, 3));
  std::vector<double> u(N), du(N);
  for (int j = 0; j < N; ++j) {
    cplx vj = s.v[j], dvj = s.dv[j];
    cplx v3 = vj * vj * vj;
    u[j] = 2.0 * (e1 * vj + lam * e2 / 8.0 * e3 * v3).real() + e2 * s.R[j];
    du[j] = 2.0 * (cplx(0, 1) / e2 * e1 * vj + e1 * dvj +
                   cplx(0, 3.0 * lam / 8.0) * e3 * v3 +
                   3.0 * lam / 8.0 * e2 * e3 * vj * vj * dvj)
                .real() +
            e2 * s.dR[j];
  }
  return {std::move(u), std::move(du)};
}

// Plain NLSW solver reusing the same kernels (quintic correction off), used
// for the limit-model study.
struct NlswState {
  std::vector<cplx> z, dz;
  std::vector<cplx> g_prev;
  long n = 0;
};

inline NlswState nlsw_init(const InitialData& data, const NkgeParams& p,
                           const Grid1d& g) {
  auto [z0, zt0] = nlsw_initial(data, p, g);
  NlswState s;
  s.z = z0.values;
  s.dz = zt0.values;
  s.n = 0;
  return s;
}

inline NlswState step_nlsw(const NlswState& s, const Mti2KernelTable& kt,
                           const NkgeParams& p) {
  const int N = static_cast<int>(s.z.size());
  auto g = mti2_detail::g_nonlinearity(s.z, p, false);
  std::vector<cplx> gc = g, zc = s.z, dzc = s.dz;
  to_fourier(gc);
  to_fourier(zc);
  to_fourier(dzc);
  const double e2 = p.eps * p.eps;
  NlswState out;
  out.n = s.n + 1;
  out.g_prev = gc;
  std::vector<cplx> zn(N), dzn(N);
  for (int k = 0; k < N; ++k) {
    cplx gdiff = s.n >= 1 ? (gc[k] - s.g_prev[k]) / kt.tau : cplx(0.0);
    zn[k] = kt.a[k] * zc[k] + e2 * kt.b[k] * dzc[k] - kt.c[k] * gc[k] -
            kt.d[k] * gdiff;
    dzn[k] = kt.ap[k] * zc[k] + e2 * kt.bp[k] * dzc[k] - kt.cp[k] * gc[k] -
             kt.dp[k] * gdiff;
  }
  to_nodal(zn);
  to_nodal(dzn);
  out.z = std::move(zn);
  out.dz = std::move(dzn);
  return out;
}

}  // namespace kgbench
