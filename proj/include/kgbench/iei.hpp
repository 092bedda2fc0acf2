#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "kgbench/mti.hpp"
#include "kgbench/phi_functions.hpp"
#include "kgbench/problem.hpp"

namespace kgbench {

// Iterative exponential integrator on the filtered field v* = e^{-it/ε²}v.
// All differential operators are Fourier multipliers; the step-independent
// multiplier arrays are tabulated once.
struct IeiKernel {
  std::vector<double> d_eps;                 // D_ε(μ)
  std::vector<cplx> half_flight;             // e^{iτD/2}
  std::vector<double> a_eps;                 // 𝒜_ε
  std::vector<cplx> frak1, frak2;            // τ e^{iτD} φ_k(iτ(2ε⁻²+μ²/2))
  std::vector<cplx> cal12, cal14, cal22, cal24;  // τ e^{iτD} φ_k(-iτ(mε⁻²+D))
  std::array<cplx, 13> phi1_s;               // φ1(m iτ/ε²), m = -6..6
  std::array<cplx, 13> phi2_s;
  double tau = 0.0;
  NkgeParams prm;
  PhaseTracker phase;
};

inline IeiKernel iei_build_kernel(const NkgeParams& p, double tau,
                                  const Grid1d& g) {
  IeiKernel k;
  k.tau = tau;
  k.prm = p;
  k.phase = PhaseTracker(tau / (p.eps * p.eps));
  const int N = g.N;
  k.d_eps.resize(N);
  k.half_flight.resize(N);
  k.a_eps.resize(N);
  k.frak1.resize(N);
  k.frak2.resize(N);
  k.cal12.resize(N);
  k.cal14.resize(N);
  k.cal22.resize(N);
  k.cal24.resize(N);
  const long double e2 = static_cast<long double>(p.eps) * p.eps;
  for (int j = 0; j < N; ++j) {
    double mu = g.wavenumbers[j];
    double D = d_eps_mu(mu, p.eps);
    k.d_eps[j] = D;
    k.half_flight[j] = unit_phase(0.5 * tau * D);
    k.a_eps[j] = 1.0 / std::sqrt(1.0 + p.eps * p.eps * mu * mu);
    cplx etd = unit_phase(tau * D);
    long double yfrak = tau * (2.0L / e2 + 0.5L * mu * mu);
    auto [f1, f2] = mti_detail::phi12_imag(yfrak);
    k.frak1[j] = tau * etd * f1;
    k.frak2[j] = tau * etd * f2;
    for (int m : {2, 4}) {
      long double ycal = -tau * (m / e2 + static_cast<long double>(D));
      auto [c1, c2] = mti_detail::phi12_imag(ycal);
      if (m == 2) {
        k.cal12[j] = tau * etd * c1;
        k.cal22[j] = tau * etd * c2;
      } else {
        k.cal14[j] = tau * etd * c1;
        k.cal24[j] = tau * etd * c2;
      }
    }
  }
  for (int m = -6; m <= 6; ++m) {
    auto [f1, f2] = mti_detail::phi12_imag(m * static_cast<long double>(tau) / e2);
    k.phi1_s[m + 6] = f1;
    k.phi2_s[m + 6] = f2;
  }
  return k;
}

struct IeiState {
  std::vector<cplx> vstar;
  long n = 0;
  NkgeParams p;
  Grid1d grid;
};

inline IeiState iei_init(const InitialData& data, const NkgeParams& p,
                         const Grid1d& g) {
  IeiState s;
  s.p = p;
  s.grid = g;
  s.n = 0;
  InitialData d = data;
  s.vstar = filtered_v0(d, p, g);
  return s;
}

namespace iei_detail {

inline std::vector<cplx> apply_mult(const std::vector<cplx>& f,
                                    const std::vector<cplx>& mult) {
  std::vector<cplx> w = f;
  to_fourier(w);
  for (size_t j = 0; j < w.size(); ++j) w[j] *= mult[j];
  to_nodal(w);
  return w;
}

inline std::vector<cplx> apply_real_mult(const std::vector<cplx>& f,
                                         const std::vector<double>& mult,
                                         double shift = 0.0) {
  std::vector<cplx> w = f;
  to_fourier(w);
  for (size_t j = 0; j < w.size(); ++j) w[j] *= (mult[j] + shift);
  to_nodal(w);
  return w;
}

}  // namespace iei_detail

inline IeiState step_iei(const IeiState& s, const IeiKernel& k) {
  using iei_detail::apply_mult;
  using iei_detail::apply_real_mult;
  const int N = s.grid.N;
  const double lam = s.p.lambda;
  const double tau = k.tau;
  const double eps2 = s.p.eps * s.p.eps;
  const double theta = k.phase.at_step(s.n);
  const cplx e2t = unit_phase(harmonic_phase(theta, 2));
  const cplx e4t = unit_phase(harmonic_phase(theta, 4));

  const auto& v = s.vstar;
  auto w = apply_mult(v, k.half_flight);

  // leading Strang-like term: kick between two half flights
  std::vector<cplx> kicked(N);
  for (int j = 0; j < N; ++j)
    kicked[j] = unit_phase(3.0 * lam * tau * std::norm(w[j]) / 8.0) * w[j];
  auto term1 = apply_mult(kicked, k.half_flight);

  // (𝒜_ε - 1) correction of the kick
  std::vector<cplx> w2w(N);
  for (int j = 0; j < N; ++j) w2w[j] = std::norm(w[j]) * w[j];
  auto t2 = apply_mult(w2w, k.half_flight);
  t2 = apply_real_mult(t2, k.a_eps, -1.0);
  const cplx c2 = cplx(0, 3.0 * lam * tau / 8.0);

  // quartic commutator term τ²λ²κ
  std::vector<cplx> w2wb(N), w4w(N);
  for (int j = 0; j < N; ++j) {
    w2wb[j] = std::norm(w[j]) * std::conj(w[j]);
    w4w[j] = std::norm(w[j]) * std::norm(w[j]) * w[j];
  }
  auto am1_w2wb = apply_real_mult(w2wb, k.a_eps, -1.0);
  auto am1_w4w = apply_real_mult(w4w, k.a_eps, -1.0);
  auto am1_w2w = apply_real_mult(w2w, k.a_eps, -1.0);
  std::vector<cplx> inner1(N), inner2(N);
  for (int j = 0; j < N; ++j) {
    inner1[j] = w[j] * w[j] * am1_w2wb[j];
    inner2[j] = std::norm(w[j]) * am1_w2w[j];
  }
  auto a_in1 = apply_real_mult(inner1, k.a_eps);
  auto a_in2 = apply_real_mult(inner2, k.a_eps);
  std::vector<cplx> kap(N);
  for (int j = 0; j < N; ++j)
    kap[j] = 9.0 / 128.0 * (a_in1[j] - am1_w4w[j] - 2.0 * a_in2[j]);
  auto term3 = apply_mult(kap, k.half_flight);
  const double c3 = tau * tau * lam * lam;

  // χ assembly
  auto Dv = apply_real_mult(v, k.d_eps);
  std::vector<cplx> c3v(N), q112(N), q114(N);
  for (int j = 0; j < N; ++j) {
    c3v[j] = v[j] * v[j] * v[j];
    q112[j] = std::norm(v[j]) * std::conj(v[j]);
    q114[j] = std::conj(v[j]) * std::conj(v[j]) * std::conj(v[j]);
  }
  // (∂xx/2 - D_ε)(v³) + 3 v² D_ε v, then 𝔇₂
  std::vector<cplx> op1 = c3v;
  to_fourier(op1);
  for (int j = 0; j < N; ++j) {
    double mu = s.grid.wavenumbers[j];
    op1[j] *= (-0.5 * mu * mu - k.d_eps[j]);
  }
  to_nodal(op1);
  for (int j = 0; j < N; ++j) op1[j] += 3.0 * v[j] * v[j] * Dv[j];

  auto chi = apply_mult(c3v, k.frak1);
  {
    auto t = apply_mult(op1, k.frak2);
    for (int j = 0; j < N; ++j) chi[j] = e2t * (chi[j] + cplx(0, tau) * t[j]);
  }
  {
    auto t = apply_mult(q112, k.cal12);
    cplx ph = std::conj(e2t);
    for (int j = 0; j < N; ++j) chi[j] += 3.0 * ph * t[j];
    t = apply_mult(q114, k.cal14);
    ph = std::conj(e4t);
    for (int j = 0; j < N; ++j) chi[j] += ph * t[j];
  }
  {
    std::vector<cplx> arg22(N), arg24(N);
    for (int j = 0; j < N; ++j) {
      cplx vb = std::conj(v[j]);
      arg22[j] = vb * vb * Dv[j] - 2.0 * std::norm(v[j]) * std::conj(Dv[j]);
      arg24[j] = vb * vb * std::conj(Dv[j]);
    }
    auto t22 = apply_mult(arg22, k.cal22);
    auto t24 = apply_mult(arg24, k.cal24);
    cplx ph2 = std::conj(e2t), ph4 = std::conj(e4t);
    for (int j = 0; j < N; ++j)
      chi[j] += cplx(0, 3.0 * tau) * ph2 * t22[j] -
                cplx(0, 3.0 * tau) * ph4 * t24[j];
  }

  // ζ_m and the φ2-weighted cubic averages
  auto phi1_at = [&](int m) { return k.phi1_s[m + 6]; };
  auto phi2_at = [&](int m) { return k.phi2_s[m + 6]; };
  auto zeta = [&](int m, int j) {
    cplx vj = v[j], vb = std::conj(vj);
    return e2t * (phi1_at(m + 2) - phi1_at(m)) * vj * vj * vj -
           3.0 * std::conj(e2t) * (phi1_at(m - 2) - phi1_at(m)) *
               std::norm(vj) * vb -
           std::conj(e4t) * 0.5 * (phi1_at(m - 4) - phi1_at(m)) * vb * vb * vb;
  };
  const cplx ie2tau(0.0, eps2 / (2.0 * tau));
  std::vector<cplx> u2(N), um2(N), w2(N), w4(N), zeta0(N);
  for (int j = 0; j < N; ++j) {
    cplx vj = v[j], vb = std::conj(vj);
    cplx cub = std::norm(vj) * vj, cubb = std::norm(vj) * vb;
    u2[j] = 3.0 * phi2_at(2) * cub - ie2tau * zeta(2, j);
    um2[j] = 3.0 * phi2_at(-2) * cub - ie2tau * zeta(-2, j);
    w2[j] = 3.0 * phi2_at(2) * cubb + ie2tau * std::conj(zeta(2, j));
    w4[j] = 3.0 * phi2_at(4) * cubb + ie2tau * std::conj(zeta(4, j));
    zeta0[j] = zeta(0, j);
  }
  // Γ_{j,k}^{n,m} X = (3λi/8) τ² e^{imθ} v^j v̄^k 𝒜_ε X
  auto gamma_term = [&](const std::vector<cplx>& X, int jj, int kk, int m) {
    auto ax = apply_real_mult(X, k.a_eps);
    cplx ph = m >= 0 ? unit_phase(harmonic_phase(theta, m))
                     : std::conj(unit_phase(harmonic_phase(theta, -m)));
    cplx pref = cplx(0, 3.0 * lam / 8.0) * tau * tau * ph;
    std::vector<cplx> out(N);
    for (int j = 0; j < N; ++j) {
      cplx f = pref;
      for (int i = 0; i < jj; ++i) f *= v[j];
      for (int i = 0; i < kk; ++i) f *= std::conj(v[j]);
      out[j] = f * ax[j];
    }
    return out;
  };
  auto g1 = gamma_term(u2, 2, 0, 2);
  auto g2v = gamma_term(um2, 0, 2, -2);
  auto g3 = gamma_term(w2, 1, 1, -2);
  auto g4 = gamma_term(w4, 0, 2, -4);
  for (int j = 0; j < N; ++j)
    chi[j] += -g1[j] - g2v[j] + 2.0 * g3[j] + g4[j];

  auto term4 = apply_real_mult(chi, k.a_eps);

  // trailing ζ0 term
  auto az0 = apply_real_mult(zeta0, k.a_eps);
  std::vector<cplx> z0b(N);
  for (int j = 0; j < N; ++j) z0b[j] = std::conj(zeta0[j]);
  auto az0b = apply_real_mult(z0b, k.a_eps);
  std::vector<cplx> tail(N);
  for (int j = 0; j < N; ++j)
    tail[j] = 2.0 * std::norm(v[j]) * az0[j] + v[j] * v[j] * az0b[j];
  auto term5 = apply_real_mult(tail, k.a_eps);
  const cplx c5 = cplx(0, 3.0 * tau * eps2 * lam * lam / 128.0);

  IeiState out = s;
  out.n = s.n + 1;
  for (int j = 0; j < N; ++j) {
    out.vstar[j] = term1[j] + c2 * t2[j] + c3 * term3[j] +
                   cplx(0, lam / 8.0) * term4[j] + c5 * term5[j];
    if (!std::isfinite(out.vstar[j].real()) ||
        std::abs(out.vstar[j]) > kBlowupThreshold)
      throw blowup_error("iei-fp: solution blow-up", static_cast<int>(out.n));
  }
  return out;
}

inline std::vector<double> iei_nodal_u(const IeiState& s, const IeiKernel& k) {
  cplx ph = unit_phase(k.phase.at_step(s.n));
  std::vector<double> u(s.vstar.size());
  for (size_t j = 0; j < u.size(); ++j) u[j] = (ph * s.vstar[j]).real();
  return u;
}

}  // namespace kgbench
