#include <doctest.h>

#include <cstring>
#include <numbers>

#include "nlsw/oracle.hpp"
#include "nlsw/stepper.hpp"
#include "test_helpers.hpp"

using namespace nlsw;
using namespace nlsw::testing;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

ModelParams benchmark_params(double eps) {
  ModelParams p;
  p.alpha = 1.0;
  p.eps = eps;
  p.p = 1;
  p.beta_exp = 0.0;
  p.T = 1.0;
  return p;
}
}  // namespace

TEST_CASE("nonlinearity is pointwise |v|^{2p} v") {
  std::vector<cplx> v{cplx(0, 0), cplx(2, 0), cplx(1, 1)};
  auto f1 = nonlinearity(v, 1);
  CHECK(f1[0] == cplx(0, 0));
  CHECK(std::abs(f1[1] - cplx(8, 0)) < 1e-15);
  CHECK(std::abs(f1[2] - cplx(2, 2)) < 1e-15);

  std::vector<cplx> vi{cplx(0, 1)};
  CHECK(std::abs(nonlinearity(vi, 2)[0] - cplx(0, 1)) < 1e-15);
}

TEST_CASE("initial_g reduces to the analytic derivative of f") {
  std::vector<cplx> zero{cplx(0, 0)}, one{cplx(1, 0)}, i{cplx(0, 1)};
  for (int p : {1, 2, 3}) CHECK(initial_g(zero, i, p)[0] == cplx(0, 0));
  CHECK(std::abs(initial_g(one, i, 1)[0] - cplx(0, 1)) < 1e-15);

  CHECK_THROWS_AS(initial_g(one, std::vector<cplx>(2), 1),
                  std::invalid_argument);
}

TEST_CASE("initial_g matches a finite-difference derivative on benchmark data") {
  GridSpec g = make_grid(-pi, pi, 16);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  const double delta = 1e-7;
  for (int p : {1, 2}) {
    auto gd = initial_g(psi0, psi1, p);
    std::vector<cplx> shifted(psi0.size());
    for (size_t j = 0; j < psi0.size(); ++j)
      shifted[j] = psi0[j] + delta * psi1[j];
    auto fd_hi = nonlinearity(shifted, p);
    auto fd_lo = nonlinearity(psi0, p);
    for (size_t j = 0; j < psi0.size(); ++j) {
      const cplx fd = (fd_hi[j] - fd_lo[j]) / delta;
      CHECK(std::abs(gd[j] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("first_step keeps the zero state at zero") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto table = cached_table(g, params.alpha, params.eps, params.p, 0.01);
  std::vector<cplx> zero(16, cplx(0, 0));
  StepperState s = first_step(g, params, *table, zero, zero, 0.01);
  CHECK(s.n == 1);
  for (const cplx& c : s.curr.raw()) CHECK(c == cplx(0, 0));
}

TEST_CASE("first_step with eps = 0 is the exact one-step propagator") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(0.0);
  const double tau = 0.01;
  auto table = cached_table(g, params.alpha, params.eps, params.p, tau);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepperState s = first_step(g, params, *table, psi0, psi1, tau);

  SpectralField u0 = forward_dft(g, psi0);
  SpectralField u1 = forward_dft(g, psi1);
  SpectralField expect(g);
  for (int l = g.min_mode(); l <= g.max_mode(); ++l)
    expect.at_mode(l) = table->mode(l).c0 * u0.at_mode(l) +
                        table->mode(l).d0 * u1.at_mode(l);
  CHECK(h1_diff(s.curr, expect) < 1e-15);

  OdeState oracle = rk4_integrate(g, params, psi0, psi1, 1e-5, tau);
  CHECK(h1_diff(s.curr, oracle.u) <= 1e-10);
}

TEST_CASE("first_step matches the high-resolution trajectory oracle") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  const double tau = 1e-3;
  auto table = cached_table(g, params.alpha, params.eps, params.p, tau);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepperState s = first_step(g, params, *table, psi0, psi1, tau);
  OdeState oracle = rk4_integrate(g, params, psi0, psi1, 1e-6, tau);
  CHECK(h1_diff(s.curr, oracle.u) <= 1e-8);
}

TEST_CASE("step rejects tables built for other parameters") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto table = cached_table(g, params.alpha, params.eps, params.p, 0.01);
  auto other = cached_table(g, params.alpha, params.eps, params.p, 0.02);
  std::vector<cplx> zero(16, cplx(0, 0));
  StepperState s = first_step(g, params, *table, zero, zero, 0.01);
  CHECK_THROWS_AS(step(std::move(s), *other), std::invalid_argument);
}

TEST_CASE("linear single-mode recursion reproduces the closed form") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(0.0);
  const double tau = 0.02;
  const int l0 = 3;
  const cplx u0(0.7, -0.2), v0(-0.3, 0.5);

  SpectralField mode(g);
  mode.at_mode(l0) = u0;
  auto psi0 = inverse_dft(mode);
  mode.at_mode(l0) = v0;
  auto psi1 = inverse_dft(mode);

  StepperState s = integrate(g, params, psi0, psi1, tau, 3 * tau);
  ModeEvolution exact =
      evolve_mode(mode_frequencies(params.alpha, g.wavenumber(l0)), u0, v0,
                  3 * tau);
  CHECK(std::abs(s.curr.at_mode(l0) - exact.u) <= 1e-10);
  for (int l = g.min_mode(); l <= g.max_mode(); ++l)
    if (l != l0) CHECK(std::abs(s.curr.at_mode(l)) <= 1e-12);
}

TEST_CASE("ten steps track the trajectory oracle") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  const double tau = 1e-3;
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepperState s = integrate(g, params, psi0, psi1, tau, 10 * tau);
  OdeState oracle = rk4_integrate(g, params, psi0, psi1, 1e-6, 10 * tau);
  CHECK(h1_diff(s.curr, oracle.u) <= 1e-7);
}

TEST_CASE("integrate with t_final = 0 returns the initial state untouched") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  int calls = 0;
  StepperState s = integrate(g, params, psi0, psi1, 0.01, 0.0,
                             [&](const StepperState&) { ++calls; });
  CHECK(calls == 0);
  CHECK(s.n == 0);
  SpectralField expect = forward_dft(g, psi0);
  CHECK(h1_diff(s.curr, expect) == 0.0);
}

TEST_CASE("integrate for one step equals first_step") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  const double tau = 0.01;
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepperState a = integrate(g, params, psi0, psi1, tau, tau);
  auto table = cached_table(g, params.alpha, params.eps, params.p, tau);
  StepperState b = first_step(g, params, *table, psi0, psi1, tau);
  CHECK(a.n == 1);
  CHECK(std::memcmp(a.curr.raw().data(), b.curr.raw().data(),
                    sizeof(cplx) * a.curr.raw().size()) == 0);
}

TEST_CASE("integrate rejects inconsistent horizons") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  CHECK_THROWS_AS(integrate(g, params, psi0, psi1, 0.03, 0.1),
                  std::invalid_argument);
}

TEST_CASE("temporal self-convergence is second order") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  const double t = 0.5;
  SpectralField a = integrate(g, params, psi0, psi1, 0.01, t).curr;
  SpectralField b = integrate(g, params, psi0, psi1, 0.005, t).curr;
  SpectralField c = integrate(g, params, psi0, psi1, 0.0025, t).curr;
  const double ratio = h1_diff(a, b) / h1_diff(b, c);
  CHECK(ratio == Approx(4.0).epsilon(0.125));  // 4 +- 0.5
}

TEST_CASE("rescaling the data and the strength commute with the flow") {
  GridSpec g = make_grid(-pi, pi, 32);
  const double tau = 1e-3;
  const double t = 100 * tau;
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  SpectralField base = integrate(g, benchmark_params(1.0), psi0, psi1, tau, t).curr;
  for (double s : {2.0, 4.0}) {
    std::vector<cplx> p0(psi0.size()), p1(psi1.size());
    for (size_t j = 0; j < psi0.size(); ++j) {
      p0[j] = s * psi0[j];
      p1[j] = s * psi1[j];
    }
    SpectralField scaled =
        integrate(g, benchmark_params(1.0 / s), p0, p1, tau, t).curr;
    for (int l = g.min_mode(); l <= g.max_mode(); ++l)
      scaled.at_mode(l) /= s;
    CHECK(h1_diff(base, scaled) <= 1e-9);
  }
}

TEST_CASE("identical inputs produce bitwise-identical trajectories") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  SpectralField a = integrate(g, params, psi0, psi1, 1e-3, 0.05).curr;
  SpectralField b = integrate(g, params, psi0, psi1, 1e-3, 0.05).curr;
  CHECK(std::memcmp(a.raw().data(), b.raw().data(),
                    sizeof(cplx) * a.raw().size()) == 0);
}

TEST_CASE("a tiny amplitude ceiling trips the divergence guard") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepOptions options;
  options.divergence_ceiling = 1e-6;
  try {
    integrate(g, params, psi0, psi1, 0.01, 0.1, {}, options);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.step >= 1);
    CHECK(e.time == Approx(e.step * 0.01));
  }
}

TEST_CASE("doubling the resolution collapses the self-difference spectrally") {
  ModelParams params = benchmark_params(1.0);
  const double tau = 1e-3, t = 1.0;
  std::vector<SpectralField> sols;
  for (int M : {8, 16, 32, 64, 128}) {
    GridSpec g = make_grid(-pi, pi, M);
    sols.push_back(
        integrate(g, params, benchmark_wave(g), benchmark_velocity(g), tau, t)
            .curr);
  }
  std::vector<double> diffs;
  for (size_t i = 0; i + 1 < sols.size(); ++i)
    diffs.push_back(h1_diff(pad_to(sols[i], 128), pad_to(sols[i + 1], 128)));
  double best = 0.0;
  for (size_t i = 0; i + 1 < diffs.size(); ++i) {
    const double ratio = diffs[i] / diffs[i + 1];
    CHECK(ratio >= 10.0);
    best = std::max(best, ratio);
  }
  CHECK(best >= 100.0);
}

TEST_CASE("dealias filter stays close to the bare scheme on smooth data") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  StepOptions filtered;
  filtered.dealias = true;
  SpectralField bare = integrate(g, params, psi0, psi1, 1e-3, 0.1).curr;
  SpectralField smooth =
      integrate(g, params, psi0, psi1, 1e-3, 0.1, {}, filtered).curr;
  CHECK(h1_diff(bare, smooth) <= 1e-3);
  for (const cplx& c : smooth.raw()) {
    CHECK(std::isfinite(c.real()));
    CHECK(std::isfinite(c.imag()));
  }
}

TEST_CASE("model parameter validation names the offending field") {
  ModelParams p = benchmark_params(1.0);
  p.beta_exp = 3.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("beta_exp"),
                       std::invalid_argument);
  p = benchmark_params(1.5);
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("eps"),
                       std::invalid_argument);
}
