#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "kgbench/phi_functions.hpp"
#include "kgbench/problem.hpp"

namespace kgbench {

// Two-scale formulation: U(x, t, ξ) on the ξ-torus with ξ = t/ε², stored
// ξ-major (vals[m*Nx + j]). The transport ∂_t U + ∂_ξ U/ε² = F(t,ξ,U) is
// integrated by implicit-Euler (order 1) or midpoint (order 2) solves that
// are diagonal per ξ-mode.
struct TsfField {
  std::vector<cplx> vals;
  int Nx = 0, Nxi = 0;
  long n = 0;

  cplx* row(int m) { return vals.data() + static_cast<size_t>(m) * Nx; }
  const cplx* row(int m) const {
    return vals.data() + static_cast<size_t>(m) * Nx;
  }
};

struct TsfState {
  TsfField U;
  int order = 1;
  double tau = 0.0;
  NkgeParams p;
  Grid1d grid;
  PhaseTracker phase;  // θ_n = t_n/ε² mod 2π
};

namespace tsf_detail {

inline void fft_x(TsfField& f, int sign) {
  if (sign < 0) {
    fft_forward_raw(f.vals.data(), f.Nx, f.Nxi, 1, f.Nx);
    const double inv = 1.0 / f.Nx;
    for (auto& x : f.vals) x *= inv;
  } else {
    fft_backward_raw(f.vals.data(), f.Nx, f.Nxi, 1, f.Nx);
  }
}

inline void fft_xi(TsfField& f, int sign) {
  if (sign < 0) {
    fft_forward_raw(f.vals.data(), f.Nxi, f.Nx, f.Nx, 1);
    const double inv = 1.0 / f.Nxi;
    for (auto& x : f.vals) x *= inv;
  } else {
    fft_backward_raw(f.vals.data(), f.Nxi, f.Nx, f.Nx, 1);
  }
}

inline int xi_mode(int m, int Nxi) { return m < Nxi / 2 ? m : m - Nxi; }

// 𝒜 = 𝓛^{-1}(I-Π) on ξ-spectra: divide nonzero modes by (il)^power, kill
// the mean.
inline void apply_A_xi(TsfField& f, int power) {
  fft_xi(f, -1);
  for (int m = 0; m < f.Nxi; ++m) {
    int l = xi_mode(m, f.Nxi);
    cplx* r = f.row(m);
    if (l == 0) {
      for (int j = 0; j < f.Nx; ++j) r[j] = 0.0;
    } else {
      cplx il(0.0, static_cast<double>(l));
      cplx div = power == 1 ? il : il * il;
      for (int j = 0; j < f.Nx; ++j) r[j] /= div;
    }
  }
  fft_xi(f, 1);
}

// subtract the ξ = 0 slice so the profile vanishes at ξ = 0
inline void anchor_at_zero(TsfField& f) {
  const cplx* r0 = f.row(0);
  std::vector<cplx> slice(r0, r0 + f.Nx);
  for (int m = 0; m < f.Nxi; ++m) {
    cplx* r = f.row(m);
    for (int j = 0; j < f.Nx; ++j) r[j] -= slice[j];
  }
}

inline std::vector<cplx> pi_mean(const TsfField& f) {
  std::vector<cplx> mean(f.Nx, 0.0);
  for (int m = 0; m < f.Nxi; ++m) {
    const cplx* r = f.row(m);
    for (int j = 0; j < f.Nx; ++j) mean[j] += r[j];
  }
  for (auto& x : mean) x /= static_cast<double>(f.Nxi);
  return mean;
}

// F(t,ξ,φ) = (iλ/8) 𝒜_ε e^{-iξ} e^{-itD_ε} [e^{iξ}e^{itD_ε}φ + c.c.]³,
// evaluated slice-wise: ψ = e^{itD}φ, bracket = 2Re(e^{iξ}ψ) is real, the
// outer operators collapse to one multiplier pass.
inline TsfField eval_F(const TsfField& U, double t, const NkgeParams& p,
                       const Grid1d& g) {
  TsfField F = U;
  fft_x(F, -1);
  for (int m = 0; m < F.Nxi; ++m) {
    cplx* r = F.row(m);
    for (int j = 0; j < F.Nx; ++j)
      r[j] *= unit_phase(t * d_eps_mu(g.wavenumbers[j], p.eps));
  }
  fft_x(F, 1);
  const double hxi = 2.0 * std::numbers::pi / F.Nxi;
  for (int m = 0; m < F.Nxi; ++m) {
    cplx exi = unit_phase(m * hxi);
    cplx* r = F.row(m);
    for (int j = 0; j < F.Nx; ++j) {
      double b = 2.0 * (exi * r[j]).real();
      r[j] = b * b * b;
    }
  }
  fft_x(F, -1);
  for (int m = 0; m < F.Nxi; ++m) {
    cplx* r = F.row(m);
    for (int j = 0; j < F.Nx; ++j) {
      double mu = g.wavenumbers[j];
      double ae = 1.0 / std::sqrt(1.0 + p.eps * p.eps * mu * mu);
      r[j] *= ae * unit_phase(-t * d_eps_mu(mu, p.eps));
    }
  }
  fft_x(F, 1);
  const cplx il8(0.0, p.lambda / 8.0);
  for (int m = 0; m < F.Nxi; ++m) {
    cplx exi = unit_phase(-m * hxi);
    cplx* r = F.row(m);
    for (int j = 0; j < F.Nx; ++j) r[j] *= il8 * exi;
  }
  return F;
}

// ∂_t F(0,ξ,φ) = (iλ/8) 𝒜_ε e^{-iξ} [-iD(B³) + 3B²Ḃ] with B = 2Re(e^{iξ}φ)
// and Ḃ = -2Im(e^{iξ}Dφ); ∂_φF(0,ξ,φ)[ψ] = (iλ/8) 𝒜_ε e^{-iξ} 3B²·2Re(e^{iξ}ψ).
// Their sum with ψ = Π F(0,·,φ) is the chain-rule derivative driving G₂.
inline TsfField eval_G2_source(const TsfField& U0, const std::vector<cplx>& psi,
                               const NkgeParams& p, const Grid1d& g) {
  const int Nx = U0.Nx, Nxi = U0.Nxi;
  const double hxi = 2.0 * std::numbers::pi / Nxi;

  std::vector<cplx> phi(U0.row(0), U0.row(0) + Nx);
  std::vector<cplx> dphi = phi;
  to_fourier(dphi);
  for (int j = 0; j < Nx; ++j) dphi[j] *= d_eps_mu(g.wavenumbers[j], p.eps);
  to_nodal(dphi);

  TsfField S;
  S.Nx = Nx;
  S.Nxi = Nxi;
  S.vals.resize(static_cast<size_t>(Nx) * Nxi);
  std::vector<cplx> cube(Nx);
  for (int m = 0; m < Nxi; ++m) {
    cplx exi = unit_phase(m * hxi);
    cplx* r = S.row(m);
    for (int j = 0; j < Nx; ++j) {
      double B = 2.0 * (exi * phi[j]).real();
      double Bd = -2.0 * (exi * dphi[j]).imag();
      double Rp = 2.0 * (exi * psi[j]).real();
      cube[j] = B * B * B;
      r[j] = 3.0 * B * B * (Bd + Rp);
    }
    // -i D (B³), spectral in x
    to_fourier(cube);
    for (int j = 0; j < Nx; ++j)
      cube[j] *= cplx(0.0, -d_eps_mu(g.wavenumbers[j], p.eps));
    to_nodal(cube);
    for (int j = 0; j < Nx; ++j) r[j] += cube[j];
  }
  fft_x(S, -1);
  for (int m = 0; m < Nxi; ++m) {
    cplx* r = S.row(m);
    for (int j = 0; j < Nx; ++j) {
      double mu = g.wavenumbers[j];
      r[j] /= std::sqrt(1.0 + p.eps * p.eps * mu * mu);
    }
  }
  fft_x(S, 1);
  const cplx il8(0.0, p.lambda / 8.0);
  for (int m = 0; m < Nxi; ++m) {
    cplx exi = unit_phase(-m * hxi);
    cplx* r = S.row(m);
    for (int j = 0; j < Nx; ++j) r[j] *= il8 * exi;
  }
  return S;
}

inline TsfField constant_in_xi(const std::vector<cplx>& v, int Nxi) {
  TsfField f;
  f.Nx = static_cast<int>(v.size());
  f.Nxi = Nxi;
  f.vals.resize(static_cast<size_t>(f.Nx) * Nxi);
  for (int m = 0; m < Nxi; ++m)
    std::copy(v.begin(), v.end(), f.row(m));
  return f;
}

}  // namespace tsf_detail

// Chapman-Enskog prepared initial profile: first order adds G1(ξ,v0)
// anchored at ξ=0; second order composes G1 along the first-order profile
// and adds G2.
inline TsfState tsf_prepare_initial(const InitialData& data,
                                    const NkgeParams& p, int order,
                                    const Grid1d& g, int n_xi, double tau) {
  if (n_xi < 4 || n_xi % 2 != 0)
    throw dimension_error("tsf: N_xi must be even, >= 4");
  TsfState s;
  s.order = order;
  s.tau = tau;
  s.p = p;
  s.grid = g;
  s.phase = PhaseTracker(tau / (p.eps * p.eps));

  auto v0 = filtered_v0(data, p, g);
  TsfField base = tsf_detail::constant_in_xi(v0, n_xi);

  TsfField G1 = tsf_detail::eval_F(base, 0.0, p, g);
  tsf_detail::apply_A_xi(G1, 1);
  for (auto& x : G1.vals) x *= p.eps * p.eps;
  tsf_detail::anchor_at_zero(G1);

  TsfField U1 = base;
  for (size_t i = 0; i < U1.vals.size(); ++i) U1.vals[i] += G1.vals[i];

  if (order == 1) {
    s.U = std::move(U1);
    s.U.n = 0;
    return s;
  }

  // G1 evaluated along the first-order profile
  TsfField G1p = tsf_detail::eval_F(U1, 0.0, p, g);
  tsf_detail::apply_A_xi(G1p, 1);
  for (auto& x : G1p.vals) x *= p.eps * p.eps;
  tsf_detail::anchor_at_zero(G1p);

  TsfField F0 = tsf_detail::eval_F(base, 0.0, p, g);
  auto piF = tsf_detail::pi_mean(F0);
  TsfField G2 = tsf_detail::eval_G2_source(base, piF, p, g);
  tsf_detail::apply_A_xi(G2, 2);
  for (auto& x : G2.vals) x *= -p.eps * p.eps;
  tsf_detail::anchor_at_zero(G2);

  s.U = std::move(base);
  for (size_t i = 0; i < s.U.vals.size(); ++i)
    s.U.vals[i] += G1p.vals[i] + G2.vals[i];
  s.U.n = 0;
  return s;
}

inline TsfState step_tsf(const TsfState& s) {
  const double e2 = s.p.eps * s.p.eps;
  const double t_n = s.U.n * s.tau;
  TsfState out = s;
  out.U.n = s.U.n + 1;

  if (s.order == 1) {
    TsfField F = tsf_detail::eval_F(s.U, t_n, s.p, s.grid);
    TsfField Uh = s.U;
    tsf_detail::fft_xi(Uh, -1);
    tsf_detail::fft_xi(F, -1);
    for (int m = 0; m < Uh.Nxi; ++m) {
      int l = tsf_detail::xi_mode(m, Uh.Nxi);
      cplx den = 1.0 + cplx(0, 1) * (static_cast<double>(l) * s.tau / e2);
      cplx* ru = Uh.row(m);
      cplx* rf = F.row(m);
      for (int j = 0; j < Uh.Nx; ++j)
        ru[j] = (ru[j] + s.tau * rf[j]) / den;
    }
    tsf_detail::fft_xi(Uh, 1);
    out.U.vals = std::move(Uh.vals);
  } else {
    TsfField F = tsf_detail::eval_F(s.U, t_n, s.p, s.grid);
    TsfField Uc = s.U;
    tsf_detail::fft_xi(Uc, -1);
    tsf_detail::fft_xi(F, -1);
    TsfField Uhalf = Uc;
    for (int m = 0; m < Uc.Nxi; ++m) {
      int l = tsf_detail::xi_mode(m, Uc.Nxi);
      cplx ik = cplx(0, 1) * (static_cast<double>(l) * s.tau / (2.0 * e2));
      cplx* ru = Uhalf.row(m);
      const cplx* rf = F.row(m);
      for (int j = 0; j < Uc.Nx; ++j)
        ru[j] = (ru[j] + 0.5 * s.tau * rf[j]) / (1.0 + ik);
    }
    tsf_detail::fft_xi(Uhalf, 1);
    TsfField Fh = tsf_detail::eval_F(Uhalf, t_n + 0.5 * s.tau, s.p, s.grid);
    tsf_detail::fft_xi(Fh, -1);
    for (int m = 0; m < Uc.Nxi; ++m) {
      int l = tsf_detail::xi_mode(m, Uc.Nxi);
      cplx ik = cplx(0, 1) * (static_cast<double>(l) * s.tau / (2.0 * e2));
      cplx* ru = Uc.row(m);
      const cplx* rf = Fh.row(m);
      for (int j = 0; j < Uc.Nx; ++j)
        ru[j] = (ru[j] * (1.0 - ik) + s.tau * rf[j]) / (1.0 + ik);
    }
    tsf_detail::fft_xi(Uc, 1);
    out.U.vals = std::move(Uc.vals);
  }
  if (!all_finite(out.U.vals))
    throw blowup_error("tsf: solution blow-up", static_cast<int>(out.U.n));
  return out;
}

// u(t_n) = Re( e^{i t_n/ε² √(1-ε²∂xx)} U(·, t_n, ξ)|_{ξ = t_n/ε²} ) with the
// ξ-evaluation by trigonometric interpolation.
inline std::vector<double> tsf_reconstruct(const TsfState& s) {
  const double t_n = s.U.n * s.tau;
  const double xi_star = s.phase.at_step(s.U.n);

  TsfField Uc = s.U;
  tsf_detail::fft_xi(Uc, -1);
  std::vector<cplx> ustar(s.U.Nx, 0.0);
  for (int m = 0; m < Uc.Nxi; ++m) {
    int l = tsf_detail::xi_mode(m, Uc.Nxi);
    cplx ph = unit_phase(l * xi_star);
    const cplx* r = Uc.row(m);
    for (int j = 0; j < Uc.Nx; ++j) ustar[j] += ph * r[j];
  }
  to_fourier(ustar);
  for (int j = 0; j < s.U.Nx; ++j) {
    double mu = s.grid.wavenumbers[j];
    double th = xi_star + t_n * d_eps_mu(mu, s.p.eps);
    ustar[j] *= unit_phase(th);
  }
  to_nodal(ustar);
  std::vector<double> u(s.U.Nx);
  for (int j = 0; j < s.U.Nx; ++j) u[j] = ustar[j].real();
  return u;
}

}  // namespace kgbench
