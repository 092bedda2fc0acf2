#pragma once

#include <cmath>
#include <complex>

#include "kgbench/spectral_field.hpp"

namespace kgbench {

// D_ε(μ) = (√(1+ε²μ²) - 1)/ε², evaluated as μ²/(√(1+ε²μ²)+1) so nothing
// cancels when ε²μ² is tiny. D_ε → μ²/2 as ε → 0.
inline double d_eps_mu(double mu, double eps) {
  double e2m2 = eps * eps * mu * mu;
  return mu * mu / (std::sqrt(1.0 + e2m2) + 1.0);
}

// ω(μ) = √(1+ε²μ²)/ε² = 1/ε² + D_ε(μ)
inline double omega_mu(double mu, double eps) {
  return std::sqrt(1.0 + eps * eps * mu * mu) / (eps * eps);
}

inline SymbolFn sym_dx() {
  return {[](double mu) { return cplx(0.0, mu); }, true};
}

inline SymbolFn sym_dxx() {
  return {[](double mu) { return cplx(-mu * mu, 0.0); }, false};
}

inline SymbolFn sym_dxxxx() {
  return {[](double mu) { return cplx(mu * mu * mu * mu, 0.0); }, false};
}

// (1 - ε²Δ)^{1/2}
inline SymbolFn sym_sqrt_op(double eps) {
  return {[eps](double mu) {
            return cplx(std::sqrt(1.0 + eps * eps * mu * mu), 0.0);
          },
          false};
}

// 𝒜_ε = (1 - ε²Δ)^{-1/2}
inline SymbolFn sym_inv_sqrt_op(double eps) {
  return {[eps](double mu) {
            return cplx(1.0 / std::sqrt(1.0 + eps * eps * mu * mu), 0.0);
          },
          false};
}

inline SymbolFn sym_d_eps(double eps) {
  return {[eps](double mu) { return cplx(d_eps_mu(mu, eps), 0.0); }, false};
}

}  // namespace kgbench
