#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "kgbench/phi_functions.hpp"
#include "kgbench/problem.hpp"

namespace kgbench {

// Limit integrators: evolve the limiting NLSE for z (Strang TSFP) and
// reconstruct u through the e^{±it/ε²} ansatz; LI-FP2 additionally carries
// the correction field v of the O(ε²) term w.
struct LiState {
  std::vector<cplx> z;
  std::vector<cplx> v;  // present only for the order-2 variant
  long n = 0;
  double tau = 0.0;
  NkgeParams p;
  Grid1d grid;
  bool order2 = false;
};

namespace li_detail {

inline void check(const std::vector<cplx>& z, long n) {
  for (const auto& x : z)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) ||
        std::abs(x) > kBlowupThreshold)
      throw blowup_error("li-fp: solution blow-up", static_cast<int>(n));
}

// 2x2 traceless matrix exponential: exp(M) = cosh(s) I + sinh(s)/s · M with
// s² = -det M; series fallback keeps the small-|s| branch exact.
inline std::array<double, 4> exp_traceless(double m00, double m01, double m10,
                                           double m11) {
  double det = m00 * m11 - m01 * m10;
  double s2 = -det;
  double c, sc;
  if (std::abs(s2) < 1e-12) {
    c = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    sc = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else if (s2 > 0) {
    double s = std::sqrt(s2);
    c = std::cosh(s);
    sc = std::sinh(s) / s;
  } else {
    double s = std::sqrt(-s2);
    c = std::cos(s);
    sc = std::sin(s) / s;
  }
  return {c + sc * m00, sc * m01, sc * m10, c + sc * m11};
}

}  // namespace li_detail

// One Strang step of 2i z_t - z_xx + 3λ|z|²z = 0: half free flight
// (multiplier e^{iμ²τ/4}), full phase kick e^{3iλτ|z|²/2}, half free flight.
inline std::vector<cplx> step_nlse_tsfp(const std::vector<cplx>& z,
                                        double tau, double lambda,
                                        const Grid1d& g) {
  std::vector<cplx> w = z;
  to_fourier(w);
  for (int k = 0; k < g.N; ++k) {
    double mu = g.wavenumbers[k];
    w[k] *= unit_phase(mu * mu * tau / 4.0);
  }
  to_nodal(w);
  for (auto& x : w) x *= unit_phase(1.5 * lambda * tau * std::norm(x));
  to_fourier(w);
  for (int k = 0; k < g.N; ++k) {
    double mu = g.wavenumbers[k];
    w[k] *= unit_phase(mu * mu * tau / 4.0);
  }
  to_nodal(w);
  li_detail::check(w, -1);
  return w;
}

// u = e^{it/ε²} z + e^{-it/ε²} z̄ = 2 Re(e^{it/ε²} z)
inline std::vector<double> reconstruct_li1(const std::vector<cplx>& z,
                                           double theta) {
  std::vector<double> u(z.size());
  cplx ph = unit_phase(theta);
  for (size_t j = 0; j < z.size(); ++j) u[j] = 2.0 * (ph * z[j]).real();
  return u;
}

// v(x,0) = -λ/2 z0³ + λ/4 z̄0³ + 3λ/2 |z0|² z̄0 + ½ ∂_xx(z0 - z̄0)
inline std::vector<cplx> li2_initial_v(const std::vector<cplx>& z0,
                                       double lambda, const Grid1d& g) {
  std::vector<cplx> lap(z0.size());
  for (size_t j = 0; j < z0.size(); ++j) lap[j] = z0[j] - std::conj(z0[j]);
  to_fourier(lap);
  for (int k = 0; k < g.N; ++k) {
    double mu = g.wavenumbers[k];
    lap[k] *= -mu * mu;
  }
  to_nodal(lap);
  std::vector<cplx> v(z0.size());
  for (size_t j = 0; j < z0.size(); ++j) {
    cplx z = z0[j], zb = std::conj(z);
    v[j] = -0.5 * lambda * z * z * z + 0.25 * lambda * zb * zb * zb +
           1.5 * lambda * std::norm(z) * zb + 0.5 * lap[j];
  }
  return v;
}

namespace li_detail {

// χ = ¼ ∂xxxx z + (51λ²/8)|z|⁴z - (3λ/2) ∂xx(|z|²z)
inline std::vector<cplx> chi_source(const std::vector<cplx>& z, double lambda,
                                    const Grid1d& g) {
  const int N = g.N;
  std::vector<cplx> d4 = z, d2(z.size());
  for (int j = 0; j < N; ++j) d2[j] = std::norm(z[j]) * z[j];
  to_fourier(d4);
  to_fourier(d2);
  for (int k = 0; k < N; ++k) {
    double mu = g.wavenumbers[k];
    d4[k] *= mu * mu * mu * mu;
    d2[k] *= -mu * mu;
  }
  to_nodal(d4);
  to_nodal(d2);
  std::vector<cplx> chi(z.size());
  for (int j = 0; j < N; ++j) {
    double a2 = std::norm(z[j]);
    chi[j] = 0.25 * d4[j] + 51.0 / 8.0 * lambda * lambda * a2 * a2 * z[j] -
             1.5 * lambda * d2[j];
  }
  return chi;
}

}  // namespace li_detail

// Strang step Φ_k(τ/2) Φ_p(τ) Φ_k(τ/2) of the correction equation, the
// potential flow integrated by the exponential trapezoidal rule with the
// nodal 2x2 matrix exponential of (τ/2)(A(z^{n+1}) + A(z^n)).
inline std::vector<cplx> step_v_flow(const std::vector<cplx>& v,
                                     const std::vector<cplx>& z_n,
                                     const std::vector<cplx>& z_np1,
                                     double tau, double lambda,
                                     const Grid1d& g) {
  const int N = g.N;
  std::vector<cplx> w = v;
  to_fourier(w);
  for (int k = 0; k < N; ++k) {
    double mu = g.wavenumbers[k];
    w[k] *= unit_phase(mu * mu * tau / 4.0);
  }
  to_nodal(w);

  auto chi_n = li_detail::chi_source(z_n, lambda, g);
  auto chi_np1 = li_detail::chi_source(z_np1, lambda, g);
  const double c = -1.5 * lambda;
  for (int j = 0; j < N; ++j) {
    double zr0 = z_n[j].real(), zi0 = z_n[j].imag();
    double zr1 = z_np1[j].real(), zi1 = z_np1[j].imag();
    // (τ/2)(A(z^{n+1}) + A(z^n)), A(zR,zI) = -(3λ/2)[[2 zR zI, zR²+3 zI²],
    //                                               [-3 zR²-zI², -2 zR zI]]
    double m00 = 0.5 * tau * c * (2 * zr0 * zi0 + 2 * zr1 * zi1);
    double m01 = 0.5 * tau * c *
                 (zr0 * zr0 + 3 * zi0 * zi0 + zr1 * zr1 + 3 * zi1 * zi1);
    double m10 = 0.5 * tau * c *
                 (-3 * zr0 * zr0 - zi0 * zi0 - 3 * zr1 * zr1 - zi1 * zi1);
    double m11 = -m00;
    auto E = li_detail::exp_traceless(m00, m01, m10, m11);
    double al = w[j].real() + 0.5 * tau * chi_n[j].imag();
    double be = w[j].imag() - 0.5 * tau * chi_n[j].real();
    double a2 = E[0] * al + E[1] * be + 0.5 * tau * chi_np1[j].imag();
    double b2 = E[2] * al + E[3] * be - 0.5 * tau * chi_np1[j].real();
    w[j] = cplx(a2, b2);
  }

  to_fourier(w);
  for (int k = 0; k < N; ++k) {
    double mu = g.wavenumbers[k];
    w[k] *= unit_phase(mu * mu * tau / 4.0);
  }
  to_nodal(w);
  li_detail::check(w, -1);
  return w;
}

// u = 2 Re(e^{it/ε²} z) + ε² w with w assembled from z, v and the phases
// e^{±it/ε²}, e^{±3it/ε²}.
inline std::vector<double> reconstruct_li2(const std::vector<cplx>& z,
                                           const std::vector<cplx>& v,
                                           double theta, double eps,
                                           double lambda) {
  std::vector<double> u(z.size());
  cplx e1 = unit_phase(theta);
  cplx e3 = unit_phase(harmonic_phase(theta, 3));
  for (size_t j = 0; j < z.size(); ++j) {
    cplx zz = z[j];
    double w = -1.5 * lambda * std::norm(zz) * (e1 * zz).real() +
               0.25 * lambda * (e3 * zz * zz * zz).real() + (e1 * v[j]).real();
    u[j] = 2.0 * (e1 * zz).real() + eps * eps * w;
  }
  return u;
}

inline LiState li_init(const InitialData& data, const NkgeParams& p,
                       double tau, const Grid1d& g, bool order2) {
  LiState s;
  s.p = p;
  s.grid = g;
  s.tau = tau;
  s.n = 0;
  s.order2 = order2;
  SpectralField z0 = nlse_initial(data, g);
  s.z = z0.values;
  if (order2) s.v = li2_initial_v(s.z, p.lambda, g);
  return s;
}

inline LiState step_li(const LiState& s) {
  LiState out = s;
  out.n = s.n + 1;
  out.z = step_nlse_tsfp(s.z, s.tau, s.p.lambda, s.grid);
  if (s.order2)
    out.v = step_v_flow(s.v, s.z, out.z, s.tau, s.p.lambda, s.grid);
  return out;
}

}  // namespace kgbench
