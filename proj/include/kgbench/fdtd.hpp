#pragma once

#include <cmath>
#include <vector>

#include "kgbench/problem.hpp"

namespace kgbench {

struct CnfdSolveConfig {
  double tol = 1e-12;  // l² increment stopping tolerance
  int max_iter = 100;
  CnfdSolveConfig() = default;
  CnfdSolveConfig(double t, int m) : tol(t), max_iter(m) {
    if (!(tol > 0.0) || max_iter < 1)
      throw dimension_error("cnfd config: tol > 0, max_iter >= 1 required");
  }
};

// Two-level state shared by CNFD/SIFD/LFFD: (u^{n-1}, u^n) on the periodic
// grid, nodal and real.
struct FdtdState {
  std::vector<double> u_prev;
  std::vector<double> u_curr;
  long n = 0;
  double tau = 0.0;
  NkgeParams p;
  Grid1d grid;
};

namespace fdtd_detail {

inline void check_blowup(const std::vector<double>& u, long n) {
  for (double x : u)
    if (!std::isfinite(x) || std::abs(x) > kBlowupThreshold)
      throw blowup_error("fdtd: solution blow-up", static_cast<int>(n));
}

inline std::vector<double> second_difference(const std::vector<double>& u,
                                             double h) {
  const int N = static_cast<int>(u.size());
  std::vector<double> d(N);
  const double ih2 = 1.0 / (h * h);
  for (int j = 0; j < N; ++j) {
    double up = u[(j + 1) % N], um = u[(j - 1 + N) % N];
    d[j] = (up - 2.0 * u[j] + um) * ih2;
  }
  return d;
}

// Symbol of the three-point δ_x² stencil on mode l: -(4/h²) sin²(πl/N)
inline std::vector<double> stencil_symbol(const Grid1d& g) {
  std::vector<double> s(g.N);
  for (int k = 0; k < g.N; ++k) {
    double t = std::sin(std::numbers::pi * g.signed_mode(k) / g.N);
    s[k] = -4.0 / (g.h * g.h) * t * t;
  }
  return s;
}

// Solve [ε²/τ² - δ_x²/2 + 1/(2ε²)] y = rhs via the Fourier diagonalization
// of the circulant stencil.
inline std::vector<double> solve_helmholtz(const std::vector<double>& rhs,
                                           const FdtdState& s) {
  const int N = s.grid.N;
  const double eps2 = s.p.eps * s.p.eps;
  std::vector<cplx> w(rhs.begin(), rhs.end());
  to_fourier(w);
  auto dsym = stencil_symbol(s.grid);
  const double c0 = eps2 / (s.tau * s.tau) + 0.5 / eps2;
  for (int k = 0; k < N; ++k) w[k] /= (c0 - 0.5 * dsym[k]);
  to_nodal(w);
  std::vector<double> y(N);
  for (int j = 0; j < N; ++j) y[j] = w[j].real();
  return y;
}

// L u for the same operator, used on the u^{n-1} level of the RHS
inline std::vector<double> apply_helmholtz(const std::vector<double>& u,
                                           const FdtdState& s) {
  const double eps2 = s.p.eps * s.p.eps;
  auto d = second_difference(u, s.grid.h);
  std::vector<double> y(u.size());
  const double c0 = eps2 / (s.tau * s.tau) + 0.5 / eps2;
  for (size_t j = 0; j < u.size(); ++j) y[j] = c0 * u[j] - 0.5 * d[j];
  return y;
}

}  // namespace fdtd_detail

// u^0 = φ1 and the regularized first level: τ/ε² is replaced by sin(τ/ε²)
// so u^1 stays bounded uniformly in ε.
inline FdtdState fdtd_first_step(const InitialData& data, const NkgeParams& p,
                                 double tau, const Grid1d& g) {
  FdtdState s;
  s.p = p;
  s.grid = g;
  s.tau = tau;
  s.n = 1;
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();
  const int N = g.N;
  s.u_prev.resize(N);
  s.u_curr.resize(N);
  for (int j = 0; j < N; ++j) s.u_prev[j] = p1.values[j].real();
  auto d2 = fdtd_detail::second_difference(s.u_prev, g.h);
  const double sn = std::sin(tau / (p.eps * p.eps));
  for (int j = 0; j < N; ++j) {
    double f1 = s.u_prev[j], f2 = p2.values[j].real();
    s.u_curr[j] =
        f1 + sn * f2 +
        0.5 * tau * sn * (d2[j] - sn / tau * f1 - p.lambda * f1 * f1 * f1);
  }
  return s;
}

inline FdtdState step_lffd(const FdtdState& s) {
  const int N = s.grid.N;
  const double eps2 = s.p.eps * s.p.eps;
  const double r = s.tau * s.tau / eps2;
  auto d2 = fdtd_detail::second_difference(s.u_curr, s.grid.h);
  FdtdState out = s;
  out.n = s.n + 1;
  out.u_prev = s.u_curr;
  for (int j = 0; j < N; ++j) {
    double u = s.u_curr[j];
    out.u_curr[j] = 2.0 * u - s.u_prev[j] +
                    r * (d2[j] - u / eps2 - s.p.lambda * u * u * u);
  }
  fdtd_detail::check_blowup(out.u_curr, out.n);
  return out;
}

inline FdtdState step_sifd(const FdtdState& s) {
  const int N = s.grid.N;
  const double eps2 = s.p.eps * s.p.eps;
  auto Lprev = fdtd_detail::apply_helmholtz(s.u_prev, s);
  std::vector<double> rhs(N);
  for (int j = 0; j < N; ++j) {
    double u = s.u_curr[j];
    rhs[j] = 2.0 * eps2 / (s.tau * s.tau) * u - s.p.lambda * u * u * u -
             Lprev[j];
  }
  FdtdState out = s;
  out.n = s.n + 1;
  out.u_prev = s.u_curr;
  out.u_curr = fdtd_detail::solve_helmholtz(rhs, s);
  fdtd_detail::check_blowup(out.u_curr, out.n);
  return out;
}

// Fixed-point solve of the fully nonlinear CNFD system. The lagged diagonal
// factor λ/4 [(y)² + (u^{n-1})²] is folded into the right-hand side, so each
// iteration costs one transform pair. Start guess: leap-frog predictor.
inline FdtdState step_cnfd(const FdtdState& s, const CnfdSolveConfig& cfg) {
  const int N = s.grid.N;
  const double eps2 = s.p.eps * s.p.eps;
  auto Lprev = fdtd_detail::apply_helmholtz(s.u_prev, s);
  std::vector<double> base(N);
  for (int j = 0; j < N; ++j)
    base[j] = 2.0 * eps2 / (s.tau * s.tau) * s.u_curr[j] - Lprev[j];

  std::vector<double> y(N), rhs(N);
  for (int j = 0; j < N; ++j) y[j] = 2.0 * s.u_curr[j] - s.u_prev[j];

  double incr = 0.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    for (int j = 0; j < N; ++j) {
      double phi = 0.25 * s.p.lambda *
                   (y[j] * y[j] + s.u_prev[j] * s.u_prev[j]);
      rhs[j] = base[j] - phi * (y[j] + s.u_prev[j]);
    }
    auto ynew = fdtd_detail::solve_helmholtz(rhs, s);
    double d2 = 0.0;
    for (int j = 0; j < N; ++j) {
      double d = ynew[j] - y[j];
      d2 += d * d;
    }
    incr = std::sqrt(s.grid.h * d2);
    y.swap(ynew);
    if (incr < cfg.tol) {
      FdtdState out = s;
      out.n = s.n + 1;
      out.u_prev = s.u_curr;
      out.u_curr = std::move(y);
      fdtd_detail::check_blowup(out.u_curr, out.n);
      return out;
    }
  }
  throw convergence_error("cnfd: fixed-point iteration did not converge", incr);
}

// E^n for the stored level pair (u_prev = u^n, u_curr = u^{n+1})
inline double discrete_energy(const FdtdState& s) {
  const int N = s.grid.N;
  const double h = s.grid.h;
  const double eps2 = s.p.eps * s.p.eps;
  double dt2 = 0.0, dxn = 0.0, dxn1 = 0.0, m = 0.0, m1 = 0.0, q = 0.0;
  for (int j = 0; j < N; ++j) {
    double dtu = (s.u_curr[j] - s.u_prev[j]) / s.tau;
    dt2 += dtu * dtu;
    double dxu = (s.u_prev[(j + 1) % N] - s.u_prev[j]) / h;
    double dxu1 = (s.u_curr[(j + 1) % N] - s.u_curr[j]) / h;
    dxn += dxu * dxu;
    dxn1 += dxu1 * dxu1;
    m += s.u_prev[j] * s.u_prev[j];
    m1 += s.u_curr[j] * s.u_curr[j];
    double a = s.u_prev[j] * s.u_prev[j], b = s.u_curr[j] * s.u_curr[j];
    q += a * a + b * b;
  }
  return eps2 * h * dt2 + 0.5 * h * (dxn + dxn1) +
         0.5 / eps2 * h * (m + m1) + h * s.p.lambda / 4.0 * q;
}

}  // namespace kgbench
