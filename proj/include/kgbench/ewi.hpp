#pragma once

#include <cmath>
#include <vector>

#include "kgbench/problem.hpp"

namespace kgbench {

// Gautschi-type exponential wave integrator, Fourier pseudospectral in space.
// State carries two coefficient levels of u and of u̇ plus the running
// stabilization constant α^n = max{α^{n-1}, max_j λ(u_j^n)²}.
struct EwiState {
  std::vector<cplx> coeffs_prev, coeffs_curr;
  std::vector<cplx> dcoeffs_prev, dcoeffs_curr;
  double alpha = 0.0;
  long n = 0;
  double tau = 0.0;
  NkgeParams p;
  Grid1d grid;
};

namespace ewi_detail {

inline std::vector<double> nodal_real(const std::vector<cplx>& coeffs) {
  std::vector<cplx> w = coeffs;
  to_nodal(w);
  std::vector<double> u(w.size());
  for (size_t j = 0; j < w.size(); ++j) u[j] = w[j].real();
  return u;
}

inline std::vector<cplx> cube_coeffs(const std::vector<double>& u,
                                     double lambda) {
  std::vector<cplx> f(u.size());
  for (size_t j = 0; j < u.size(); ++j) f[j] = lambda * u[j] * u[j] * u[j];
  to_fourier(f);
  return f;
}

inline void check(const std::vector<double>& u, long n) {
  for (double x : u)
    if (!std::isfinite(x) || std::abs(x) > kBlowupThreshold)
      throw blowup_error("ewi: solution blow-up", static_cast<int>(n));
}

}  // namespace ewi_detail

inline EwiState ewi_init(const InitialData& data, const NkgeParams& p,
                         double tau, const Grid1d& g) {
  EwiState s;
  s.p = p;
  s.grid = g;
  s.tau = tau;
  s.n = 0;
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_coeffs();
  p2.ensure_coeffs();
  s.coeffs_curr = p1.coeffs;
  s.dcoeffs_curr = p2.coeffs;
  const double ie2 = 1.0 / (p.eps * p.eps);
  for (auto& c : s.dcoeffs_curr) c *= ie2;
  s.coeffs_prev.assign(g.N, 0.0);
  s.dcoeffs_prev.assign(g.N, 0.0);
  s.alpha = 0.0;
  return s;
}

// One step of the two-branch Gautschi recurrence with a pinned stabilization
// constant (used when replaying a recorded α sequence); u̇ is propagated
// alongside, which the n = 0 branch requires.
inline EwiState step_ewi_with_alpha(const EwiState& s, double anew) {
  const int N = s.grid.N;
  const double eps = s.p.eps;
  const double eps2 = eps * eps;

  auto u = ewi_detail::nodal_real(s.coeffs_curr);
  ewi_detail::check(u, s.n);

  EwiState out = s;
  out.n = s.n + 1;
  out.alpha = anew;

  auto f = ewi_detail::cube_coeffs(u, s.p.lambda);

  out.coeffs_prev = s.coeffs_curr;
  out.dcoeffs_prev = s.dcoeffs_curr;
  out.coeffs_curr.resize(N);
  out.dcoeffs_curr.resize(N);
  for (int k = 0; k < N; ++k) {
    double mu = s.grid.wavenumbers[k];
    double wn = std::sqrt(1.0 + eps2 * (mu * mu + anew)) / eps2;
    double cn = std::cos(wn * s.tau);
    double sh = std::sin(0.5 * wn * s.tau);
    double g1 = 2.0 * sh * sh / (eps2 * wn * wn);  // (1-cos(ωτ))/(εω)²
    double w = omega_mu(mu, eps);
    double cw = std::cos(w * s.tau), sw = std::sin(w * s.tau);
    if (s.n == 0) {
      out.coeffs_curr[k] = (cn + anew * g1) * s.coeffs_curr[k] +
                           std::sin(wn * s.tau) / wn * s.dcoeffs_curr[k] -
                           g1 * f[k];
      out.dcoeffs_curr[k] = -w * sw * s.coeffs_curr[k] +
                            cw * s.dcoeffs_curr[k] - sw / (eps2 * w) * f[k];
    } else {
      out.coeffs_curr[k] = -s.coeffs_prev[k] +
                           2.0 * (cn + anew * g1) * s.coeffs_curr[k] -
                           2.0 * g1 * f[k];
      out.dcoeffs_curr[k] = s.dcoeffs_prev[k] - 2.0 * w * sw * s.coeffs_curr[k] -
                            2.0 * sw / (eps2 * w) * f[k];
    }
  }
  auto un = ewi_detail::nodal_real(out.coeffs_curr);
  ewi_detail::check(un, out.n);
  return out;
}

// α^n = max{α^{n-1}, max_j λ(u_j^n)²}, computed from u^n before stepping
inline EwiState step_ewi(const EwiState& s) {
  auto u = ewi_detail::nodal_real(s.coeffs_curr);
  double anew = s.alpha;
  for (double x : u) anew = std::max(anew, s.p.lambda * x * x);
  return step_ewi_with_alpha(s, anew);
}

inline std::vector<double> ewi_nodal_u(const EwiState& s) {
  return ewi_detail::nodal_real(s.coeffs_curr);
}

inline std::vector<double> ewi_nodal_du(const EwiState& s) {
  return ewi_detail::nodal_real(s.dcoeffs_curr);
}

}  // namespace kgbench
