#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "kgbench/spectral_field.hpp"
#include "kgbench/symbols.hpp"

namespace kgbench {

// Nodal amplitudes beyond this (or non-finite values) are treated as
// blow-up: flagged, not crashed.
constexpr double kBlowupThreshold = 1e8;

struct NkgeParams {
  double eps = 1.0;     // 0 < ε ≤ 1, inversely proportional to the wave speed
  double lambda = 1.0;  // cubic nonlinearity strength
  double a = -16.0;
  double b = 16.0;

  NkgeParams() = default;
  NkgeParams(double eps_, double lambda_, double a_, double b_)
      : eps(eps_), lambda(lambda_), a(a_), b(b_) {
    if (!(eps > 0.0 && eps <= 1.0)) throw dimension_error("eps out of (0,1]");
    if (!(b > a)) throw dimension_error("domain: b must exceed a");
  }
};

// u(x,0) = φ1, ε² ∂_t u(x,0) = φ2
struct InitialData {
  SpectralField phi1;
  SpectralField phi2;
  std::string tag;
};

struct DataCatalogEntry {
  std::string id;
  std::function<double(double)> phi1;
  std::function<double(double)> phi2;
  double default_a, default_b;
};

// The四 1D data sets of the study plus the 2D Gaussian pair.
inline DataCatalogEntry catalog_entry(const std::string& id) {
  const double spi = std::sqrt(std::numbers::pi);
  if (id == "initKG") {
    return {id,
            [](double x) {
              return 3.0 * std::sin(x) /
                     (std::exp(x * x / 2) + std::exp(-x * x / 2));
            },
            [spi](double x) { return 2.0 * std::exp(-x * x) / spi; }, -16.0,
            16.0};
  }
  auto phi2_sech = [](double x) {
    return 0.5 * std::sin(x) / std::cosh(x * x);
  };
  if (id == "smooth") {
    return {id, [spi](double x) { return std::exp(-x * x) / spi; }, phi2_sech,
            -128.0, 128.0};
  }
  if (id == "nonsmooth-m1") {
    return {id,
            [spi](double x) { return x * std::abs(x) * std::exp(-x * x) / spi; },
            phi2_sech, -128.0, 128.0};
  }
  if (id == "nonsmooth-m2") {
    return {id,
            [spi](double x) {
              return x * x * std::abs(x) * std::exp(-x * x) / spi;
            },
            phi2_sech, -128.0, 128.0};
  }
  throw dimension_error("unknown data id: " + id);
}

inline InitialData sample_data(const std::string& id, const Grid1d& g) {
  auto e = catalog_entry(id);
  InitialData d;
  d.phi1 = SpectralField::sample(g, e.phi1);
  d.phi2 = SpectralField::sample(g, e.phi2);
  d.tag = id;
  return d;
}

// 2D wave-interaction data (two displaced Gaussians against one).
inline double gauss2d_phi1(double x, double y) {
  return std::exp(-(x + 2) * (x + 2) - y * y) +
         std::exp(-(x - 2) * (x - 2) - y * y);
}
inline double gauss2d_phi2(double x, double y) {
  return std::exp(-x * x - y * y);
}

// E = ∫ [ε²|∂_t u|² + |∂_x u|² + |u|²/ε² + (λ/2)|u|⁴] dx with the gradient
// evaluated spectrally and the quartic term by periodic trapezoid.
inline double energy(SpectralField u, SpectralField ut, const NkgeParams& p,
                     const Grid1d& g) {
  if (u.size() != static_cast<size_t>(g.N) || ut.size() != u.size())
    throw dimension_error("energy: fields do not match grid");
  u.ensure_values();
  ut.ensure_values();
  if (!all_finite(u.values) || !all_finite(ut.values))
    throw numeric_error("energy: non-finite field values");
  u.ensure_coeffs();
  ut.ensure_coeffs();
  double kin = 0.0, grad = 0.0, mass = 0.0;
  for (int k = 0; k < g.N; ++k) {
    double mu = g.is_nyquist(k) ? 0.0 : g.wavenumbers[k];
    kin += std::norm(ut.coeffs[k]);
    grad += mu * mu * std::norm(u.coeffs[k]);
    mass += std::norm(u.coeffs[k]);
  }
  double quart = 0.0;
  for (const auto& v : u.values) {
    double a2 = std::norm(v);
    quart += a2 * a2;
  }
  const double eps2 = p.eps * p.eps;
  return g.length() * (eps2 * kin + grad + mass / eps2) +
         g.h * (p.lambda / 2.0) * quart;
}

// Initial data for the limiting NLSW: z0 = (φ1 - iφ2)/2 and
// z_t(0) = (i/2)(-Δ z0 + 3λ|z0|² z0).
inline std::pair<SpectralField, SpectralField> nlsw_initial(
    const InitialData& data, const NkgeParams& p, const Grid1d& g) {
  SpectralField z0;
  z0.values.resize(g.N);
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();
  for (int j = 0; j < g.N; ++j)
    z0.values[j] = 0.5 * (p1.values[j] - cplx(0, 1) * p2.values[j]);
  z0.values_ok = true;

  SpectralField lap = apply_symbol(z0, sym_dxx(), g);
  lap.ensure_values();
  SpectralField zt0;
  zt0.values.resize(g.N);
  for (int j = 0; j < g.N; ++j) {
    cplx z = z0.values[j];
    zt0.values[j] = cplx(0, 0.5) * (-lap.values[j] +
                                    3.0 * p.lambda * std::norm(z) * z);
  }
  zt0.values_ok = true;
  return {std::move(z0), std::move(zt0)};
}

// v0 = φ1 - i (1-ε²Δ)^{-1/2} φ2, the filtered first-order unknown shared by
// the two-scale and iterative exponential formulations.
inline std::vector<cplx> filtered_v0(const InitialData& data,
                                     const NkgeParams& p, const Grid1d& g) {
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_coeffs();
  std::vector<cplx> ap2 = p2.coeffs;
  for (int j = 0; j < g.N; ++j) {
    double mu = g.wavenumbers[j];
    ap2[j] /= std::sqrt(1.0 + p.eps * p.eps * mu * mu);
  }
  to_nodal(ap2);
  std::vector<cplx> v0(g.N);
  for (int j = 0; j < g.N; ++j) v0[j] = p1.values[j] - cplx(0, 1) * ap2[j];
  return v0;
}

inline SpectralField nlse_initial(const InitialData& data, const Grid1d& g) {
  SpectralField z0;
  z0.values.resize(g.N);
  SpectralField p1 = data.phi1, p2 = data.phi2;
  p1.ensure_values();
  p2.ensure_values();
  for (int j = 0; j < g.N; ++j)
    z0.values[j] = 0.5 * (p1.values[j] - cplx(0, 1) * p2.values[j]);
  z0.values_ok = true;
  return z0;
}

}  // namespace kgbench
