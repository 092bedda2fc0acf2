#include <catch2/catch_amalgamated.hpp>

#include "kgbench/iei.hpp"
#include "kgbench/limit_integrators.hpp"
#include "kgbench/mti2.hpp"
#include "oracles.hpp"

using namespace kgbench;

namespace {

InitialData mode_data(const Grid1d& g, int l) {
  InitialData d;
  double mu = g.wavenumbers[l];
  d.phi1 = SpectralField::sample(
      g, [&](double x) { return std::cos(mu * (x - g.a)); });
  d.phi2 = SpectralField::sample(g, [](double) { return 0.0; });
  d.tag = "mode";
  return d;
}

InitialData zero_data(const Grid1d& g) {
  InitialData d;
  d.phi1 = SpectralField::sample(g, [](double) { return 0.0; });
  d.phi2 = SpectralField::sample(g, [](double) { return 0.0; });
  d.tag = "zero";
  return d;
}

}  // namespace

TEST_CASE("iei is exact on the linear problem") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.45, 0.0, -16.0, 16.0);
  int l = 4;
  double tau = 0.02;
  auto k = iei_build_kernel(p, tau, g);
  auto s = iei_init(mode_data(g, l), p, g);
  const int steps = 100;
  for (int n = 0; n < steps; ++n) s = step_iei(s, k);
  double w = omega_mu(g.wavenumbers[l], p.eps);
  auto u = iei_nodal_u(s, k);
  for (int j = 0; j < g.N; ++j) {
    double c = std::cos(g.wavenumbers[l] * (g.nodes[j] - g.a));
    CHECK(u[j] == Catch::Approx(std::cos(w * steps * tau) * c).margin(1e-11));
  }
}

TEST_CASE("iei self-convergence is second order") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto run = [&](double tau) {
    auto k = iei_build_kernel(p, tau, g);
    auto s = iei_init(data, p, g);
    long steps = std::lround(1.0 / tau);
    for (long n = 0; n < steps; ++n) s = step_iei(s, k);
    return iei_nodal_u(s, k);
  };
  auto a = run(0.01), b = run(0.005), c = run(0.0025);
  double d1 = 0.0, d2 = 0.0;
  for (int j = 0; j < g.N; ++j) {
    d1 = std::max(d1, std::abs(a[j] - b[j]));
    d2 = std::max(d2, std::abs(b[j] - c[j]));
  }
  CHECK(d1 / d2 > 3.4);
  CHECK(d1 / d2 < 4.6);
}

TEST_CASE("mti2 initialization identities") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  auto z = mti2_initialize(zero_data(g), p, g);
  for (int j = 0; j < g.N; ++j) {
    CHECK(std::abs(z.v[j]) == 0.0);
    CHECK(z.R[j] == 0.0);
    CHECK(z.dR[j] == 0.0);
  }

  // R0 scales like ε² at fixed data
  Grid1d gg(-16.0, 16.0, 256);
  auto data = sample_data("initKG", gg);
  auto sa = mti2_initialize(data, NkgeParams(0.1, 1.0, -16.0, 16.0), gg);
  auto sb = mti2_initialize(data, NkgeParams(0.05, 1.0, -16.0, 16.0), gg);
  double na = 0.0, nb = 0.0;
  for (int j = 0; j < gg.N; ++j) {
    na = std::max(na, std::abs(sa.R[j]));
    nb = std::max(nb, std::abs(sb.R[j]));
  }
  double ratio = na / nb;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("mti2 v1 approaches the nlsw zt0 for tiny eps") {
  Grid1d g(-16.0, 16.0, 256);
  NkgeParams p(1e-6, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto s = mti2_initialize(data, p, g);
  auto [z0, zt0] = nlsw_initial(data, p, g);
  for (int j = 0; j < g.N; ++j)
    CHECK(std::abs(s.dv[j] - zt0.values[j]) < 1e-8);
}

TEST_CASE("mti2 reconstruction at t = 0 reproduces phi1") {
  Grid1d g(-16.0, 16.0, 128);
  for (double eps : {1.0, 0.25, 0.01}) {
    NkgeParams p(eps, 1.0, -16.0, 16.0);
    auto data = sample_data("initKG", g);
    auto kt = build_mti2_kernels(p, 0.01, g);
    auto s = mti2_initialize(data, p, g);
    auto [u, du] = mti2_reconstruct(s, kt);
    SpectralField p1 = data.phi1;
    p1.ensure_values();
    for (int j = 0; j < g.N; ++j)
      CHECK(std::abs(u[j] - p1.values[j].real()) < 1e-10);
  }
}

TEST_CASE("mti2 at lambda = 0: linear flow, zero remainder") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.35, 0.0, -16.0, 16.0);
  int l = 4;
  double tau = 0.02;
  auto kt = build_mti2_kernels(p, tau, g);
  auto s = mti2_initialize(mode_data(g, l), p, g);
  const int steps = 50;
  for (int n = 0; n < steps; ++n) s = step_mti2(s, kt);
  for (int j = 0; j < g.N; ++j) CHECK(std::abs(s.R[j]) < 1e-13);
  auto [u, du] = mti2_reconstruct(s, kt);
  double w = omega_mu(g.wavenumbers[l], p.eps);
  for (int j = 0; j < g.N; ++j) {
    double c = std::cos(g.wavenumbers[l] * (g.nodes[j] - g.a));
    CHECK(u[j] == Catch::Approx(std::cos(w * steps * tau) * c).margin(1e-10));
  }
}

TEST_CASE("mti2 self-convergence is second order") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto run = [&](double tau) {
    auto kt = build_mti2_kernels(p, tau, g);
    auto s = mti2_initialize(data, p, g);
    long steps = std::lround(1.0 / tau);
    for (long n = 0; n < steps; ++n) s = step_mti2(s, kt);
    return mti2_reconstruct(s, kt).first;
  };
  auto a = run(0.01), b = run(0.005), c = run(0.0025);
  double d1 = 0.0, d2 = 0.0;
  for (int j = 0; j < g.N; ++j) {
    d1 = std::max(d1, std::abs(a[j] - b[j]));
    d2 = std::max(d2, std::abs(b[j] - c[j]));
  }
  CHECK(d1 / d2 > 3.4);
  CHECK(d1 / d2 < 4.6);
}

TEST_CASE("nlsw solver approaches the nlse flow in the small-eps limit") {
  Grid1d g(-16.0, 16.0, 128);
  NkgeParams p(1e-4, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  double tau = 1e-4;
  auto kt = build_mti2_kernels(p, tau, g);
  auto s = nlsw_init(data, p, g);
  auto z = nlse_initial(data, g).values;
  const int steps = 1000;
  for (int n = 0; n < steps; ++n) {
    s = step_nlsw(s, kt, p);
    z = step_nlse_tsfp(z, tau, p.lambda, g);
  }
  for (int j = 0; j < g.N; ++j)
    CHECK(std::abs(s.z[j] - z[j]) < 1e-6);
}
