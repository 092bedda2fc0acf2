#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kgbench/errors.hpp"
#include "kgbench/fft.hpp"
#include "kgbench/grid.hpp"

namespace kgbench {

// Nodal values and discrete Fourier coefficients of a periodic field, with
// validity flags tracking which representation is current. Storage is complex
// even for real fields.
struct SpectralField {
  std::vector<cplx> values;
  std::vector<cplx> coeffs;
  bool values_ok = false;
  bool coeffs_ok = false;

  SpectralField() = default;
  explicit SpectralField(std::vector<cplx> nodal)
      : values(std::move(nodal)), values_ok(true) {}

  size_t size() const { return values_ok ? values.size() : coeffs.size(); }

  static SpectralField from_coeffs(std::vector<cplx> c) {
    SpectralField f;
    f.coeffs = std::move(c);
    f.coeffs_ok = true;
    return f;
  }

  static SpectralField sample(const Grid1d& g,
                              const std::function<double(double)>& fn) {
    std::vector<cplx> v(g.N);
    for (int j = 0; j < g.N; ++j) v[j] = fn(g.nodes[j]);
    return SpectralField(std::move(v));
  }

  void ensure_coeffs() {
    if (coeffs_ok) return;
    if (!values_ok) throw dimension_error("field has no current representation");
    coeffs = values;
    to_fourier(coeffs);
    coeffs_ok = true;
  }

  void ensure_values() {
    if (values_ok) return;
    if (!coeffs_ok) throw dimension_error("field has no current representation");
    values = coeffs;
    to_nodal(values);
    values_ok = true;
  }
};

// Fourier multiplier with an explicit flag for odd-order differentiation
// symbols, which zero the unpaired l = -N/2 mode.
struct SymbolFn {
  std::function<cplx(double mu)> eval;
  bool zero_nyquist = false;
};

inline SpectralField to_coeffs(SpectralField field, const Grid1d& grid) {
  if (field.size() != static_cast<size_t>(grid.N))
    throw dimension_error("to_coeffs: field length does not match grid");
  field.ensure_coeffs();
  field.ensure_values();
  return field;
}

inline SpectralField apply_symbol(SpectralField field, const SymbolFn& sym,
                                  const Grid1d& grid) {
  if (field.size() != static_cast<size_t>(grid.N))
    throw dimension_error("apply_symbol: field length does not match grid");
  field.ensure_coeffs();
  SpectralField out;
  out.coeffs.resize(grid.N);
  for (int k = 0; k < grid.N; ++k) {
    cplx m = (sym.zero_nyquist && grid.is_nyquist(k))
                 ? cplx(0.0)
                 : sym.eval(grid.wavenumbers[k]);
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      throw numeric_error("apply_symbol: non-finite multiplier at mode l=" +
                          std::to_string(grid.signed_mode(k)));
    out.coeffs[k] = m * field.coeffs[k];
  }
  out.coeffs_ok = true;
  return out;
}

// ‖v‖_{L²}² = (b-a) Σ_l |ṽ_l|², the spectral form of the periodic trapezoid
// quadrature of |v|².
inline double l2_norm_sq(SpectralField& f, const Grid1d& g) {
  f.ensure_coeffs();
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return g.length() * s;
}

inline double h1_norm_of_coeffs(const std::vector<cplx>& c, const Grid1d& g) {
  double s = 0.0;
  for (int k = 0; k < g.N; ++k) {
    double mu = g.is_nyquist(k) ? 0.0 : g.wavenumbers[k];
    s += (1.0 + mu * mu) * std::norm(c[k]);
  }
  return std::sqrt(g.length() * s);
}

inline double h1_error(SpectralField u, SpectralField ref, const Grid1d& grid) {
  if (u.size() != ref.size() || u.size() != static_cast<size_t>(grid.N))
    throw dimension_error("h1_error: grids differ");
  u.ensure_coeffs();
  ref.ensure_coeffs();
  std::vector<cplx> d(grid.N);
  for (int k = 0; k < grid.N; ++k) d[k] = u.coeffs[k] - ref.coeffs[k];
  return h1_norm_of_coeffs(d, grid);
}

// H¹ distance between fields living on different grids over the same domain:
// coefficients are aligned by signed mode number, absent modes count as zero.
inline double h1_error_cross(SpectralField u, const Grid1d& gu,
                             SpectralField ref, const Grid1d& gr) {
  if (gu.a != gr.a || gu.b != gr.b)
    throw dimension_error("h1_error_cross: domains differ");
  u.ensure_coeffs();
  ref.ensure_coeffs();
  const Grid1d& gbig = gu.N >= gr.N ? gu : gr;
  double s = 0.0;
  for (int k = 0; k < gbig.N; ++k) {
    int l = gbig.signed_mode(k);
    auto pick = [&](const SpectralField& f, const Grid1d& g) -> cplx {
      if (l < -g.N / 2 || l >= g.N / 2) return 0.0;
      return f.coeffs[l >= 0 ? l : l + g.N];
    };
    cplx d = pick(u, gu) - pick(ref, gr);
    double mu = gbig.is_nyquist(k) ? 0.0 : gbig.wavenumbers[k];
    s += (1.0 + mu * mu) * std::norm(d);
  }
  return std::sqrt(gbig.length() * s);
}

// Keep modes |l| < N_coarse/2; the coarse Nyquist slot has no counterpart
// with the convention that differentiation zeroes it, so it is set to zero.
inline SpectralField restrict_or_project(SpectralField fine,
                                         const Grid1d& fine_grid,
                                         const Grid1d& coarse_grid) {
  if (fine_grid.a != coarse_grid.a || fine_grid.b != coarse_grid.b ||
      fine_grid.N % coarse_grid.N != 0 || fine_grid.N < coarse_grid.N)
    throw dimension_error("restrict_or_project: incompatible grids");
  fine.ensure_coeffs();
  const int Nc = coarse_grid.N;
  std::vector<cplx> c(Nc, 0.0);
  for (int k = 0; k < Nc; ++k) {
    if (coarse_grid.is_nyquist(k)) continue;
    int l = coarse_grid.signed_mode(k);
    c[k] = fine.coeffs[l >= 0 ? l : l + fine_grid.N];
  }
  return SpectralField::from_coeffs(std::move(c));
}

inline bool all_finite(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](const cplx& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace kgbench
