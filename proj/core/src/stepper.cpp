#include "nlsw/stepper.hpp"

#include <cmath>
#include <string>

namespace nlsw {

double ModelParams::t_final() const { return T / std::pow(eps, beta_exp); }

double ModelParams::eps2p() const { return std::pow(eps, 2 * p); }

void ModelParams::validate() const {
  if (!(alpha > 0.0))
    throw std::invalid_argument("ModelParams: alpha must be positive");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("ModelParams: eps must lie in [0, 1]");
  if (p < 1)
    throw std::invalid_argument("ModelParams: p must be a positive integer");
  if (!(beta_exp >= 0.0 && beta_exp <= 2.0 * p))
    throw std::invalid_argument("ModelParams: beta_exp must lie in [0, 2p]");
  if (!(T > 0.0))
    throw std::invalid_argument("ModelParams: T must be positive");
}

DivergenceError::DivergenceError(long long step_, double time_)
    : std::runtime_error("diverged at step " + std::to_string(step_) +
                         " (t = " + std::to_string(time_) + ")"),
      step(step_),
      time(time_) {}

std::vector<cplx> nonlinearity(std::span<const cplx> values, int p) {
  std::vector<cplx> out(values.size());
  for (size_t j = 0; j < values.size(); ++j) {
    const double a2 = std::norm(values[j]);
    double w = a2;
    for (int k = 1; k < p; ++k) w *= a2;
    out[j] = w * values[j];
  }
  return out;
}

std::vector<cplx> initial_g(std::span<const cplx> psi0,
                            std::span<const cplx> psi1, int p) {
  if (psi0.size() != psi1.size())
    throw std::invalid_argument("initial_g: psi0 and psi1 lengths differ");
  std::vector<cplx> out(psi0.size());
  for (size_t j = 0; j < psi0.size(); ++j) {
    const double a2 = std::norm(psi0[j]);
    // |psi0|^{2p-2}; the psi0^2 factor kills the p=1, psi0=0 corner.
    double w = 1.0;
    for (int k = 1; k < p; ++k) w *= a2;
    out[j] = (p + 1) * w * a2 * psi1[j] +
             static_cast<double>(p) * w * psi0[j] * psi0[j] * std::conj(psi1[j]);
  }
  return out;
}

namespace {

void require_match(const GridSpec& grid, const ModelParams& params,
                   const CoefficientTable& table, double tau) {
  if (!(table.grid() == grid) || table.alpha() != params.alpha ||
      table.eps() != params.eps || table.p() != params.p ||
      table.tau() != tau)
    throw std::invalid_argument(
        "stepper: coefficient table does not match (grid, alpha, eps, p, tau)");
}

void check_samples(std::span<const cplx> v, size_t M, const char* name) {
  if (v.size() != M)
    throw std::invalid_argument(std::string("stepper: ") + name +
                                " sample count does not match M");
}

// Zero modes with |l| > M/3 (2/3-rule) in place.
void dealias(SpectralField& f) {
  const GridSpec& g = f.grid();
  const int cut = g.size() / 3;
  for (int l = g.min_mode(); l <= g.max_mode(); ++l)
    if (std::abs(l) > cut) f.at_mode(l) = 0.0;
}

void check_divergence(std::span<const cplx> values, long long step, double time,
                      const StepOptions& options) {
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
        std::abs(v) > options.divergence_ceiling)
      throw DivergenceError(step, time);
  }
}

SpectralField transformed_nonlinearity(const GridSpec& grid,
                                       std::span<const cplx> values, int p,
                                       const StepOptions& options) {
  SpectralField f_hat = forward_dft(grid, nonlinearity(values, p));
  if (options.dealias) dealias(f_hat);
  return f_hat;
}

}  // namespace

StepperState initial_state(const GridSpec& grid, const ModelParams& params,
                           std::span<const cplx> psi0,
                           std::span<const cplx> psi1, double tau,
                           const StepOptions& options) {
  params.validate();
  check_samples(psi0, static_cast<size_t>(grid.size()), "psi0");
  check_samples(psi1, static_cast<size_t>(grid.size()), "psi1");
  SpectralField psi0_hat = forward_dft(grid, psi0);
  SpectralField f0_hat = transformed_nonlinearity(grid, psi0, params.p, options);
  SpectralField g0_hat = forward_dft(grid, initial_g(psi0, psi1, params.p));
  if (options.dealias) dealias(g0_hat);
  return StepperState{0, tau, psi0_hat, psi0_hat, f0_hat, f0_hat, g0_hat};
}

StepperState first_step(const GridSpec& grid, const ModelParams& params,
                        const CoefficientTable& table,
                        std::span<const cplx> psi0, std::span<const cplx> psi1,
                        double tau, const StepOptions& options) {
  params.validate();
  require_match(grid, params, table, tau);
  check_samples(psi0, static_cast<size_t>(grid.size()), "psi0");
  check_samples(psi1, static_cast<size_t>(grid.size()), "psi1");

  SpectralField psi0_hat = forward_dft(grid, psi0);
  SpectralField psi1_hat = forward_dft(grid, psi1);
  SpectralField f0_hat = transformed_nonlinearity(grid, psi0, params.p, options);
  SpectralField g0_hat = forward_dft(grid, initial_g(psi0, psi1, params.p));
  if (options.dealias) dealias(g0_hat);

  SpectralField psi1_new(grid);
  auto coef = table.modes_natural();
  auto out = psi1_new.raw();
  auto u0 = psi0_hat.raw();
  auto u1 = psi1_hat.raw();
  auto f0 = f0_hat.raw();
  auto g0 = g0_hat.raw();
  for (size_t k = 0; k < out.size(); ++k) {
    const auto& m = coef[k];
    out[k] = m.c0 * u0[k] + m.d0 * u1[k] + m.pcoef * f0[k] + m.qcoef * g0[k];
  }

  std::vector<cplx> phys = inverse_dft(psi1_new);
  check_divergence(phys, 1, tau, options);
  SpectralField f1_hat = transformed_nonlinearity(grid, phys, params.p, options);

  return StepperState{1,      tau,    std::move(psi0_hat), std::move(psi1_new),
                      std::move(f1_hat), std::move(f0_hat), std::move(g0_hat)};
}

StepperState step(StepperState state, const CoefficientTable& table,
                  const StepOptions& options) {
  if (state.n < 1)
    throw std::invalid_argument("step: state must be at n >= 1 (use first_step)");
  const GridSpec& grid = state.curr.grid();
  if (!(table.grid() == grid) || table.tau() != state.tau)
    throw std::invalid_argument("step: coefficient table does not match state");

  const double tau = state.tau;
  SpectralField next(grid);
  SpectralField g_curr(grid);
  {
    auto coef = table.modes_natural();
    auto out = next.raw();
    auto gc = g_curr.raw();
    auto up = state.prev.raw();
    auto uc = state.curr.raw();
    auto fc = state.f_curr.raw();
    auto fp = state.f_prev.raw();
    auto gp = state.g_prev.raw();
    for (size_t k = 0; k < out.size(); ++k) {
      const auto& m = coef[k];
      gc[k] = (fc[k] - fp[k]) / tau;
      out[k] = m.c * up[k] + m.d * uc[k] + m.pcoef * fc[k] + m.qcoef * gc[k] -
               m.pstar * fp[k] - m.qstar * gp[k];
    }
  }

  const long long n_next = state.n + 1;
  std::vector<cplx> phys = inverse_dft(next);
  check_divergence(phys, n_next, static_cast<double>(n_next) * tau, options);
  SpectralField f_next =
      transformed_nonlinearity(grid, phys, table.p(), options);

  return StepperState{n_next,
                      tau,
                      std::move(state.curr),
                      std::move(next),
                      std::move(f_next),
                      std::move(state.f_curr),
                      std::move(g_curr)};
}

StepperState integrate(const GridSpec& grid, const ModelParams& params,
                       std::span<const cplx> psi0, std::span<const cplx> psi1,
                       double tau, double t_final, const StepObserver& observer,
                       const StepOptions& options) {
  params.validate();
  if (!(tau > 0.0)) throw std::invalid_argument("integrate: tau must be positive");
  if (t_final < 0.0)
    throw std::invalid_argument("integrate: t_final must be non-negative");
  const long long n_steps = std::llround(t_final / tau);
  if (std::abs(static_cast<double>(n_steps) * tau - t_final) >
      1e-9 * std::max(t_final, tau))
    throw std::invalid_argument(
        "integrate: t_final is not an integer multiple of tau");

  if (n_steps == 0)
    return initial_state(grid, params, psi0, psi1, tau, options);

  auto table = cached_table(grid, params.alpha, params.eps, params.p, tau);
  StepperState state = first_step(grid, params, *table, psi0, psi1, tau, options);
  if (observer) observer(state);
  while (state.n < n_steps) {
    state = step(std::move(state), *table, options);
    if (observer) observer(state);
  }
  return state;
}

}  // namespace nlsw
