#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace kgbench {

// φ1(z) = (e^z - 1)/z and φ2(z) = (z e^z - e^z + 1)/z².
// Series below |z| = 0.5, direct formula above; the series keeps full
// precision where the direct forms cancel.
inline std::complex<double> phi1(std::complex<double> z) {
  if (std::abs(z) < 0.5) {
    std::complex<double> sum = 1.0, term = 1.0;
    for (int k = 1; k < 26; ++k) {
      term *= z / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

// Note: this is (z e^z - e^z + 1)/z² = Σ (m+1) z^m/(m+2)!, the weight of the
// ∫ θ e^{θz} kernel — not the standard (e^z-1-z)/z².
inline std::complex<double> phi2(std::complex<double> z) {
  if (std::abs(z) < 0.5) {
    std::complex<double> sum = 0.5, zp = 1.0;
    double fact = 2.0;
    for (int m = 1; m < 26; ++m) {
      zp *= z;
      fact *= static_cast<double>(m + 2);
      sum += zp * (static_cast<double>(m + 1) / fact);
    }
    return sum;
  }
  std::complex<double> ez = std::exp(z);
  return (z * ez - ez + 1.0) / (z * z);
}

// Running phase θ_n = n·ρ mod 2π accumulated in extended precision. For
// ε down to 2^-15 and 1e5 steps the double-precision product n·ρ would
// lose ~1e-7 rad; long double keeps the drift below 1e-9.
class PhaseTracker {
 public:
  PhaseTracker() = default;
  explicit PhaseTracker(double step_phase) : rho_(step_phase) {}

  // phase of step n (θ = n·ρ mod 2π), as a double in [0, 2π)
  double at_step(long n) const {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double r = std::fmod(rho_, two_pi);
    long double th = std::fmod(r * static_cast<long double>(n), two_pi);
    if (th < 0) th += two_pi;
    return static_cast<double>(th);
  }

 private:
  long double rho_ = 0.0L;
};

// k·θ mod 2π for harmonic phases e^{ikt/ε²}
inline double harmonic_phase(double theta, int k) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double th = std::fmod(static_cast<long double>(theta) * k, two_pi);
  if (th < 0) th += two_pi;
  return static_cast<double>(th);
}

inline std::complex<double> unit_phase(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace kgbench
