#include <doctest.h>

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <numbers>

#include "nlsw/diagnostics.hpp"
#include "nlsw/oracle.hpp"
#include "test_helpers.hpp"

using namespace nlsw;
using namespace nlsw::testing;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

ModelParams benchmark_params(double eps, double beta = 0.0) {
  ModelParams p;
  p.alpha = 1.0;
  p.eps = eps;
  p.p = 1;
  p.beta_exp = beta;
  p.T = 1.0;
  return p;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nlsw_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("ode_rhs of the zero state is zero") {
  GridSpec g = make_grid(-pi, pi, 16);
  OdeState s{SpectralField(g), SpectralField(g), 0.0};
  OdeRhs r = ode_rhs(s, benchmark_params(1.0));
  for (const cplx& c : r.du.raw()) CHECK(c == cplx(0, 0));
  for (const cplx& c : r.dv.raw()) CHECK(c == cplx(0, 0));
}

TEST_CASE("linear single-mode rhs matches the characteristic roots") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(0.0);
  const int l0 = 5;
  ModeFrequencies f = mode_frequencies(params.alpha, g.wavenumber(l0));
  for (double beta : {f.beta_plus, f.beta_minus}) {
    OdeState s{SpectralField(g), SpectralField(g), 0.0};
    s.u.at_mode(l0) = 1.0;
    s.v.at_mode(l0) = I * beta;  // eigenvector of the 2x2 modal system
    OdeRhs r = ode_rhs(s, params);
    CHECK(std::abs(r.du.at_mode(l0) - I * beta) < 1e-12);
    CHECK(std::abs(r.dv.at_mode(l0) - (-beta * beta)) < 1e-9);
  }
}

TEST_CASE("benchmark data satisfies the modal equation residual-free") {
  GridSpec g = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  OdeState s{forward_dft(g, psi0), forward_dft(g, psi1), 0.0};
  OdeRhs r = ode_rhs(s, params);

  SpectralField f_hat = forward_dft(g, nonlinearity(psi0, params.p));
  for (int l = g.min_mode(); l <= g.max_mode(); ++l) {
    const double mu = g.wavenumber(l);
    const cplx residual = I * s.v.at_mode(l) - params.alpha * r.dv.at_mode(l) -
                          mu * mu * s.u.at_mode(l) -
                          params.eps2p() * f_hat.at_mode(l);
    CHECK(std::abs(residual) <= 1e-12);
  }
}

TEST_CASE("rk4 reproduces the closed-form linear mode evolution") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(0.0);
  const int l0 = 4;
  const cplx u0(0.6, 0.1), v0(-0.2, 0.4);
  SpectralField mode(g);
  mode.at_mode(l0) = u0;
  auto psi0 = inverse_dft(mode);
  mode.at_mode(l0) = v0;
  auto psi1 = inverse_dft(mode);

  OdeState s = rk4_integrate(g, params, psi0, psi1, 1e-4, 1.0);
  ModeEvolution exact =
      evolve_mode(mode_frequencies(params.alpha, g.wavenumber(l0)), u0, v0, 1.0);
  CHECK(std::abs(s.u.at_mode(l0) - exact.u) <= 1e-10);
  CHECK(std::abs(s.v.at_mode(l0) - exact.v) <= 1e-9);
}

TEST_CASE("rk4 self-difference contracts at fourth order") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  SpectralField a = rk4_integrate(g, params, psi0, psi1, 0.02, 1.0).u;
  SpectralField b = rk4_integrate(g, params, psi0, psi1, 0.01, 1.0).u;
  SpectralField c = rk4_integrate(g, params, psi0, psi1, 0.005, 1.0).u;
  const double ratio = h1_diff(a, b) / h1_diff(b, c);
  CHECK(ratio == Approx(16.0).epsilon(0.25));
}

TEST_CASE("rk4 with zero steps returns the initial data") {
  GridSpec g = make_grid(-pi, pi, 16);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  OdeState s = rk4_integrate(g, params, psi0, psi1, 1e-3, 0.0);
  CHECK(h1_diff(s.u, forward_dft(g, psi0)) == 0.0);
  CHECK(s.t == 0.0);
}

TEST_CASE("rk4 conserves mass and energy along the trajectory") {
  GridSpec g = make_grid(-pi, pi, 64);
  ModelParams params = benchmark_params(1.0);
  auto psi0 = benchmark_wave(g);
  auto psi1 = benchmark_velocity(g);
  ConservedQuantities before = conserved(psi0, psi1, g, params);
  OdeState s = rk4_integrate(g, params, psi0, psi1, 1e-3, 1.0);
  ConservedQuantities after =
      conserved(inverse_dft(s.u), inverse_dft(s.v), g, params);
  CHECK(std::abs(after.mass - before.mass) <= 1e-8 * std::abs(before.mass));
  CHECK(std::abs(after.energy - before.energy) <=
        1e-8 * std::abs(before.energy));
}

TEST_CASE("reference solutions round-trip through the disk cache") {
  TempDir tmp;
  ReferenceCache cache(tmp.path);
  GridSpec fine = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(0.5);

  SpectralField first = make_reference(fine, params, default_initial_wave,
                                       default_initial_velocity, 1e-3, &cache);
  ReferenceCache::Key key{params.alpha, params.eps,    params.p,
                          params.beta_exp, params.T,   fine.size(),
                          1e-3,        fine.a(),       fine.b()};
  CHECK(std::filesystem::exists(cache.data_path(key)));
  CHECK(std::filesystem::exists(cache.sidecar_path(key)));

  SpectralField second = make_reference(fine, params, default_initial_wave,
                                        default_initial_velocity, 1e-3, &cache);
  CHECK(std::memcmp(first.raw().data(), second.raw().data(),
                    sizeof(cplx) * first.raw().size()) == 0);

  // A different parameter point misses.
  ReferenceCache::Key other = key;
  other.eps = 0.25;
  CHECK(!cache.load(other).has_value());
}

TEST_CASE("fine reference agrees with the rk4 trajectory") {
  TempDir tmp;
  ReferenceCache cache(tmp.path);
  GridSpec fine = make_grid(-pi, pi, 32);
  ModelParams params = benchmark_params(1.0);
  SpectralField ref = make_reference(fine, params, default_initial_wave,
                                     default_initial_velocity, 5e-4, &cache);
  OdeState oracle = rk4_integrate(fine, params, benchmark_wave(fine),
                                  benchmark_velocity(fine), 1e-4, 1.0);
  // Dominated by the reference's own tau_ref^2 error.
  CHECK(h1_diff(ref, oracle.u) <= std::max(1e-6, 10.0 * 5e-4 * 5e-4));
}
