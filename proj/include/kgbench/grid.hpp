#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "kgbench/errors.hpp"

namespace kgbench {

// Periodic grid on (a,b) with N nodes x_j = a + j h, node N identified with
// node 0. Fourier modes l = -N/2 .. N/2-1 are stored in FFT order
// (l = 0..N/2-1, then l = -N/2..-1).
struct Grid1d {
  double a = 0.0;
  double b = 0.0;
  int N = 0;
  double h = 0.0;
  std::vector<double> nodes;        // N+1 entries, x_0 = a .. x_N = b
  std::vector<double> wavenumbers;  // N entries in FFT order, μ_l = 2πl/(b-a)

  Grid1d() = default;
  Grid1d(double a_, double b_, int N_) : a(a_), b(b_), N(N_) {
    if (N < 4 || N % 2 != 0) throw dimension_error("grid: N must be even, >= 4");
    if (!(b > a)) throw dimension_error("grid: b must exceed a");
    h = (b - a) / N;
    nodes.resize(N + 1);
    for (int j = 0; j <= N; ++j) nodes[j] = a + j * h;
    nodes[N] = b;
    wavenumbers.resize(N);
    const double base = 2.0 * std::numbers::pi / (b - a);
    for (int k = 0; k < N; ++k) wavenumbers[k] = base * signed_mode(k);
  }

  double length() const { return b - a; }

  // FFT-order index -> signed mode number l in [-N/2, N/2-1].
  int signed_mode(int k) const { return k < N / 2 ? k : k - N; }
  bool is_nyquist(int k) const { return k == N / 2; }

  bool operator==(const Grid1d& o) const {
    return a == o.a && b == o.b && N == o.N;
  }
};

struct Grid2d {
  Grid1d gx;
  Grid1d gy;
  Grid2d() = default;
  Grid2d(Grid1d x, Grid1d y) : gx(std::move(x)), gy(std::move(y)) {}
  size_t size() const {
    return static_cast<size_t>(gx.N) * static_cast<size_t>(gy.N);
  }
};

}  // namespace kgbench
