#pragma once

#include <cmath>
#include <vector>

#include "kgbench/problem.hpp"

namespace kgbench {

// Deuflhard-equivalent time splitting of the first-order system
// (u, v = ∂_t u): half kick in v, exact rotation of the linear flow per
// Fourier mode, half kick.
struct TsState {
  std::vector<double> u, v;
  long n = 0;
  double tau = 0.0;
  NkgeParams p;
  Grid1d grid;
};

namespace ts_detail {

inline void check(const std::vector<double>& u, long n) {
  for (double x : u)
    if (!std::isfinite(x) || std::abs(x) > kBlowupThreshold)
      throw blowup_error("ts-fp: solution blow-up", static_cast<int>(n));
}

}  // namespace ts_detail

inline TsState ts_init(const InitialData& data, const NkgeParams& p,
                       double tau, const Grid1d& g) {
  TsState s;
  s.p = p;
  s.grid = g;
  s.tau = tau;
  s.n = 0;
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();
  s.u.resize(g.N);
  s.v.resize(g.N);
  const double ie2 = 1.0 / (p.eps * p.eps);
  for (int j = 0; j < g.N; ++j) {
    s.u[j] = p1.values[j].real();
    s.v[j] = p2.values[j].real() * ie2;
  }
  return s;
}

inline TsState step_tsfp(const TsState& s) {
  const int N = s.grid.N;
  const double kick = s.p.lambda * s.tau / (2.0 * s.p.eps * s.p.eps);
  TsState out = s;
  out.n = s.n + 1;

  std::vector<cplx> uc(N), vc(N);
  for (int j = 0; j < N; ++j) {
    double u = s.u[j];
    uc[j] = u;
    vc[j] = s.v[j] - kick * u * u * u;
  }
  to_fourier(uc);
  to_fourier(vc);
  for (int k = 0; k < N; ++k) {
    double w = omega_mu(s.grid.wavenumbers[k], s.p.eps);
    double c = std::cos(w * s.tau), sn = std::sin(w * s.tau);
    cplx uu = uc[k], vv = vc[k];
    uc[k] = c * uu + sn / w * vv;
    vc[k] = -w * sn * uu + c * vv;
  }
  to_nodal(uc);
  to_nodal(vc);
  for (int j = 0; j < N; ++j) {
    double u = uc[j].real();
    out.u[j] = u;
    out.v[j] = vc[j].real() - kick * u * u * u;
  }
  ts_detail::check(out.u, out.n);
  return out;
}

// Tensor-product variant on a 2D periodic grid; ω uses μ² + ν².
struct Ts2dState {
  std::vector<double> u, v;  // row-major [iy*Nx + ix]
  long n = 0;
  double tau = 0.0;
  NkgeParams p;
  Grid2d grid;
};

inline Ts2dState ts2d_init(const Grid2d& g, const NkgeParams& p, double tau,
                           const std::function<double(double, double)>& phi1,
                           const std::function<double(double, double)>& phi2) {
  Ts2dState s;
  s.p = p;
  s.grid = g;
  s.tau = tau;
  s.n = 0;
  const int Nx = g.gx.N, Ny = g.gy.N;
  s.u.resize(static_cast<size_t>(Nx) * Ny);
  s.v.resize(s.u.size());
  const double ie2 = 1.0 / (p.eps * p.eps);
  for (int iy = 0; iy < Ny; ++iy)
    for (int ix = 0; ix < Nx; ++ix) {
      double x = g.gx.nodes[ix], y = g.gy.nodes[iy];
      s.u[static_cast<size_t>(iy) * Nx + ix] = phi1(x, y);
      s.v[static_cast<size_t>(iy) * Nx + ix] = phi2(x, y) * ie2;
    }
  return s;
}

inline Ts2dState ts2d_init_gauss(const Grid2d& g, const NkgeParams& p,
                                 double tau) {
  return ts2d_init(g, p, tau, gauss2d_phi1, gauss2d_phi2);
}

inline Ts2dState step_tsfp_2d(const Ts2dState& s) {
  const int Nx = s.grid.gx.N, Ny = s.grid.gy.N;
  const double kick = s.p.lambda * s.tau / (2.0 * s.p.eps * s.p.eps);
  Ts2dState out = s;
  out.n = s.n + 1;

  std::vector<cplx> uc(s.u.size()), vc(s.u.size());
  for (size_t j = 0; j < s.u.size(); ++j) {
    double u = s.u[j];
    uc[j] = u;
    vc[j] = s.v[j] - kick * u * u * u;
  }
  to_fourier_2d(uc, Nx, Ny);
  to_fourier_2d(vc, Nx, Ny);
  for (int iy = 0; iy < Ny; ++iy) {
    double nu = s.grid.gy.wavenumbers[iy];
    for (int ix = 0; ix < Nx; ++ix) {
      double mu = s.grid.gx.wavenumbers[ix];
      double w = std::sqrt(1.0 + s.p.eps * s.p.eps * (mu * mu + nu * nu)) /
                 (s.p.eps * s.p.eps);
      double c = std::cos(w * s.tau), sn = std::sin(w * s.tau);
      size_t j = static_cast<size_t>(iy) * Nx + ix;
      cplx uu = uc[j], vv = vc[j];
      uc[j] = c * uu + sn / w * vv;
      vc[j] = -w * sn * uu + c * vv;
    }
  }
  to_nodal_2d(uc, Nx, Ny);
  to_nodal_2d(vc, Nx, Ny);
  for (size_t j = 0; j < s.u.size(); ++j) {
    double u = uc[j].real();
    out.u[j] = u;
    out.v[j] = vc[j].real() - kick * u * u * u;
  }
  ts_detail::check(out.u, out.n);
  return out;
}

}  // namespace kgbench
