#include "nlsw/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsw {

namespace {

void rhs_into(const GridSpec& grid, const ModelParams& params, double eps2p,
              std::span<const cplx> u, std::span<const cplx> v,
              std::span<cplx> du, std::span<cplx> dv) {
  SpectralField uf(grid);
  std::copy(u.begin(), u.end(), uf.raw().begin());
  std::vector<cplx> phys = inverse_dft(uf);
  SpectralField f_hat =
      forward_dft(grid, nonlinearity(phys, params.p));

  const cplx I{0.0, 1.0};
  const int M = grid.size();
  auto fh = f_hat.raw();
  for (int k = 0; k < M; ++k) {
    const double mu = grid.wavenumber(grid.mode_at(k));
    const size_t ks = static_cast<size_t>(k);
    du[ks] = v[ks];
    dv[ks] = (I * v[ks] - mu * mu * u[ks] - eps2p * fh[ks]) / params.alpha;
  }
}

void check_finite(std::span<const cplx> u, long long step, double time,
                  const StepOptions& options) {
  for (const cplx& c : u)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
        std::abs(c) > options.divergence_ceiling)
      throw DivergenceError(step, time);
}

}  // namespace

OdeRhs ode_rhs(const OdeState& state, const ModelParams& params) {
  if (!(state.u.grid() == state.v.grid()))
    throw std::invalid_argument("ode_rhs: u and v live on different grids");
  const GridSpec& grid = state.u.grid();
  OdeRhs out{SpectralField(grid), SpectralField(grid)};
  rhs_into(grid, params, params.eps2p(), state.u.raw(), state.v.raw(),
           out.du.raw(), out.dv.raw());
  return out;
}

OdeState rk4_integrate(const GridSpec& grid, const ModelParams& params,
                       std::span<const cplx> psi0, std::span<const cplx> psi1,
                       double tau_oracle, double t_final,
                       const StepOptions& options) {
  params.validate();
  if (!(tau_oracle > 0.0))
    throw std::invalid_argument("rk4_integrate: tau_oracle must be positive");
  const long long n_steps = std::llround(t_final / tau_oracle);
  if (std::abs(static_cast<double>(n_steps) * tau_oracle - t_final) >
      1e-9 * std::max(t_final, tau_oracle))
    throw std::invalid_argument(
        "rk4_integrate: t_final is not an integer multiple of tau_oracle");

  const double eps2p = params.eps2p();
  const size_t M = static_cast<size_t>(grid.size());
  SpectralField u_hat = forward_dft(grid, psi0);
  SpectralField v_hat = forward_dft(grid, psi1);
  std::vector<cplx> u(u_hat.raw().begin(), u_hat.raw().end());
  std::vector<cplx> v(v_hat.raw().begin(), v_hat.raw().end());

  std::vector<cplx> k1u(M), k1v(M), k2u(M), k2v(M), k3u(M), k3v(M), k4u(M),
      k4v(M), tu(M), tv(M);
  const double h = tau_oracle;
  for (long long n = 0; n < n_steps; ++n) {
    rhs_into(grid, params, eps2p, u, v, k1u, k1v);
    for (size_t j = 0; j < M; ++j) {
      tu[j] = u[j] + 0.5 * h * k1u[j];
      tv[j] = v[j] + 0.5 * h * k1v[j];
    }
    rhs_into(grid, params, eps2p, tu, tv, k2u, k2v);
    for (size_t j = 0; j < M; ++j) {
      tu[j] = u[j] + 0.5 * h * k2u[j];
      tv[j] = v[j] + 0.5 * h * k2v[j];
    }
    rhs_into(grid, params, eps2p, tu, tv, k3u, k3v);
    for (size_t j = 0; j < M; ++j) {
      tu[j] = u[j] + h * k3u[j];
      tv[j] = v[j] + h * k3v[j];
    }
    rhs_into(grid, params, eps2p, tu, tv, k4u, k4v);
    for (size_t j = 0; j < M; ++j) {
      u[j] += h / 6.0 * (k1u[j] + 2.0 * k2u[j] + 2.0 * k3u[j] + k4u[j]);
      v[j] += h / 6.0 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
    }
    check_finite(u, n + 1, static_cast<double>(n + 1) * h, options);
  }

  OdeState out{SpectralField(grid, std::move(u)),
               SpectralField(grid, std::move(v)),
               static_cast<double>(n_steps) * h};
  return out;
}

SpectralField make_reference(const GridSpec& grid_fine,
                             const ModelParams& params, const Sampler& psi0_fn,
                             const Sampler& psi1_fn, double ref_tau,
                             const ReferenceCache* cache) {
  params.validate();
  ReferenceCache::Key key{params.alpha, params.eps,     params.p,
                          params.beta_exp, params.T,    grid_fine.size(),
                          ref_tau,        grid_fine.a(), grid_fine.b()};
  if (cache) {
    if (auto hit = cache->load(key)) return std::move(*hit);
  }

  const int M = grid_fine.size();
  std::vector<cplx> psi0(static_cast<size_t>(M)), psi1(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    psi0[static_cast<size_t>(j)] = psi0_fn(grid_fine.node(j));
    psi1[static_cast<size_t>(j)] = psi1_fn(grid_fine.node(j));
  }
  StepperState final_state =
      integrate(grid_fine, params, psi0, psi1, ref_tau, params.t_final());
  SpectralField result = std::move(final_state.curr);
  if (cache) cache->store(key, result);
  return result;
}

}  // namespace nlsw
