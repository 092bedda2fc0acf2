#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kgbench/two_scale.hpp"
#include "oracles.hpp"

using namespace kgbench;

namespace {

TsfField random_field(int Nx, int Nxi, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  TsfField f;
  f.Nx = Nx;
  f.Nxi = Nxi;
  f.vals.resize(static_cast<size_t>(Nx) * Nxi);
  for (auto& x : f.vals) x = cplx(dist(rng), dist(rng));
  return f;
}

}  // namespace

TEST_CASE("averaging operator identities") {
  const int Nx = 8, Nxi = 16;
  auto f = random_field(Nx, Nxi, 5);

  // Π ∘ 𝒜 = 0: the ξ-mean of 𝒜 f vanishes
  auto af = f;
  tsf_detail::apply_A_xi(af, 1);
  auto mean = tsf_detail::pi_mean(af);
  for (const auto& m : mean) CHECK(std::abs(m) < 1e-13);

  // 𝓛 ∘ 𝓛^{-1} = I - Π: differentiate 𝒜 f in ξ and compare to f - Πf
  auto df = af;
  tsf_detail::fft_xi(df, -1);
  for (int m = 0; m < Nxi; ++m) {
    int l = tsf_detail::xi_mode(m, Nxi);
    cplx il(0.0, static_cast<double>(l));
    for (int j = 0; j < Nx; ++j) df.row(m)[j] *= il;
  }
  tsf_detail::fft_xi(df, 1);
  auto fmean = tsf_detail::pi_mean(f);
  for (int m = 0; m < Nxi; ++m)
    for (int j = 0; j < Nx; ++j)
      CHECK(std::abs(df.row(m)[j] - (f.row(m)[j] - fmean[j])) < 1e-12);

  // Π ∘ Π = Π trivially on the mean field
  double s = 0.0;
  for (int j = 0; j < Nx; ++j) s += std::abs(fmean[j]);
  CHECK(s > 0.0);
}

TEST_CASE("prepared data is consistent at xi = 0") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto v0 = filtered_v0(data, p, g);
  for (int order : {1, 2}) {
    auto s = tsf_prepare_initial(data, p, order, g, 16, 0.01);
    for (int j = 0; j < g.N; ++j)
      CHECK(std::abs(s.U.row(0)[j] - v0[j]) < 1e-12);
  }
}

TEST_CASE("lambda = 0 prepared data is xi-independent") {
  Grid1d g(-16.0, 16.0, 32);
  NkgeParams p(0.5, 0.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto v0 = filtered_v0(data, p, g);
  auto s = tsf_prepare_initial(data, p, 2, g, 8, 0.01);
  for (int m = 0; m < 8; ++m)
    for (int j = 0; j < g.N; ++j)
      CHECK(std::abs(s.U.row(m)[j] - v0[j]) < 1e-14);
}

TEST_CASE("lambda = 0 trajectory is constant and reconstruction is exact") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.4, 0.0, -16.0, 16.0);
  int l = 3;
  double mu = g.wavenumbers[l];
  InitialData d;
  d.phi1 = SpectralField::sample(
      g, [&](double x) { return std::cos(mu * (x - g.a)); });
  d.phi2 = SpectralField::sample(g, [](double) { return 0.0; });
  double tau = 0.02;
  auto s = tsf_prepare_initial(d, p, 2, g, 8, tau);
  auto first = s.U.vals;
  const int steps = 50;
  for (int n = 0; n < steps; ++n) s = step_tsf(s);
  for (size_t i = 0; i < first.size(); ++i)
    CHECK(std::abs(s.U.vals[i] - first[i]) < 1e-12);
  auto u = tsf_reconstruct(s);
  double w = omega_mu(mu, p.eps);
  for (int j = 0; j < g.N; ++j)
    CHECK(u[j] == Catch::Approx(std::cos(w * steps * tau) *
                                std::cos(mu * (g.nodes[j] - g.a)))
                      .margin(1e-10));
}

TEST_CASE("reconstruction at t = 0 returns phi1") {
  Grid1d g(-16.0, 16.0, 128);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  for (int order : {1, 2}) {
    auto s = tsf_prepare_initial(data, p, order, g, 32, 0.01);
    auto u = tsf_reconstruct(s);
    SpectralField p1 = data.phi1;
    p1.ensure_values();
    for (int j = 0; j < g.N; ++j)
      CHECK(std::abs(u[j] - p1.values[j].real()) < 1e-12);
  }
}

TEST_CASE("xi interpolation agrees with direct node evaluation") {
  // τ/ε² = h_ξ exactly: each step advances ξ* by one node
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.5, 1.0, -16.0, 16.0);
  const int Nxi = 16;
  double tau = 2.0 * std::numbers::pi * p.eps * p.eps / Nxi;
  auto data = sample_data("initKG", g);
  auto s = tsf_prepare_initial(data, p, 2, g, Nxi, tau);
  for (int n = 0; n < 5; ++n) s = step_tsf(s);

  // interpolated slice at ξ* = t_5/ε² = 5 h_ξ vs stored row 5
  double xi_star = s.phase.at_step(s.U.n);
  CHECK(xi_star == Catch::Approx(5.0 * 2.0 * std::numbers::pi / Nxi)
                       .margin(1e-12));
  TsfField Uc = s.U;
  tsf_detail::fft_xi(Uc, -1);
  std::vector<cplx> interp(g.N, 0.0);
  for (int m = 0; m < Nxi; ++m) {
    int l = tsf_detail::xi_mode(m, Nxi);
    cplx ph = unit_phase(l * xi_star);
    for (int j = 0; j < g.N; ++j) interp[j] += ph * Uc.row(m)[j];
  }
  for (int j = 0; j < g.N; ++j)
    CHECK(std::abs(interp[j] - s.U.row(5)[j]) < 1e-12);
}

TEST_CASE("G2 source matches a finite-difference derivative oracle") {
  Grid1d g(-16.0, 16.0, 32);
  NkgeParams p(0.5, 1.3, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto v0 = filtered_v0(data, p, g);
  const int Nxi = 8;
  auto base = tsf_detail::constant_in_xi(v0, Nxi);
  auto F0 = tsf_detail::eval_F(base, 0.0, p, g);
  auto psi = tsf_detail::pi_mean(F0);
  auto S = tsf_detail::eval_G2_source(base, psi, p, g);

  // ∂_t F(0,ξ,φ) by centered difference in t
  const double dt = 1e-6;
  auto Fp = tsf_detail::eval_F(base, dt, p, g);
  auto Fm = tsf_detail::eval_F(base, -dt, p, g);
  // ∂_φ F in direction ψ by centered difference in the profile
  const double dphi = 1e-6;
  auto basep = base;
  auto basem = base;
  for (int m = 0; m < Nxi; ++m)
    for (int j = 0; j < g.N; ++j) {
      basep.row(m)[j] += dphi * psi[j];
      basem.row(m)[j] -= dphi * psi[j];
    }
  auto Fpp = tsf_detail::eval_F(basep, 0.0, p, g);
  auto Fpm = tsf_detail::eval_F(basem, 0.0, p, g);
  for (int m = 0; m < Nxi; ++m)
    for (int j = 0; j < g.N; ++j) {
      cplx ref = (Fp.row(m)[j] - Fm.row(m)[j]) / (2.0 * dt) +
                 (Fpp.row(m)[j] - Fpm.row(m)[j]) / (2.0 * dphi);
      CHECK(std::abs(S.row(m)[j] - ref) < 1e-8);
    }
}

TEST_CASE("temporal self-convergence: order 1 and order 2") {
  Grid1d g(-16.0, 16.0, 64);
  NkgeParams p(0.8, 1.0, -16.0, 16.0);
  auto data = sample_data("initKG", g);
  auto run = [&](int order, double tau) {
    auto s = tsf_prepare_initial(data, p, order, g, 32, tau);
    long steps = std::lround(0.5 / tau);
    for (long n = 0; n < steps; ++n) s = step_tsf(s);
    return tsf_reconstruct(s);
  };
  for (int order : {1, 2}) {
    auto a = run(order, 0.01), b = run(order, 0.005), c = run(order, 0.0025);
    double d1 = 0.0, d2 = 0.0;
    for (int j = 0; j < g.N; ++j) {
      d1 = std::max(d1, std::abs(a[j] - b[j]));
      d2 = std::max(d2, std::abs(b[j] - c[j]));
    }
    double expected = order == 1 ? 2.0 : 4.0;
    CHECK(d1 / d2 > 0.7 * expected);
    CHECK(d1 / d2 < 1.35 * expected);
  }
}
