#pragma once

#include <functional>
#include <stdexcept>

#include "nlsw/coefficients.hpp"
#include "nlsw/grid.hpp"

namespace nlsw {

// Equation and study-horizon parameters:
//   i psi_t - alpha psi_tt + psi_xx - eps^{2p} |psi|^{2p} psi = 0
// integrated on [0, T / eps^beta_exp]. eps = 0 selects the linear flow.
struct ModelParams {
  double alpha = 1.0;
  double eps = 1.0;
  int p = 1;
  double beta_exp = 0.0;
  double T = 1.0;

  double t_final() const;
  double eps2p() const;
  void validate() const;  // throws std::invalid_argument naming the field
};

// Raised when a trajectory produces non-finite values or exceeds the
// configured amplitude ceiling.
class DivergenceError : public std::runtime_error {
public:
  DivergenceError(long long step, double time);
  long long step;
  double time;
};

struct StepOptions {
  double divergence_ceiling = 1e6;  // l-inf ceiling on grid values
  bool dealias = false;             // 2/3-rule filter on the nonlinear term
};

// Pointwise |v|^{2p} v. The eps^{2p} prefactor lives in the coefficient
// table, not here.
std::vector<cplx> nonlinearity(std::span<const cplx> values, int p);

// d/dt f(phi(t)) at t=0 for phi(0)=psi0, phi'(0)=psi1:
//   (p+1)|psi0|^{2p} psi1 + p |psi0|^{2p-2} psi0^2 conj(psi1).
std::vector<cplx> initial_g(std::span<const cplx> psi0,
                            std::span<const cplx> psi1, int p);

// Two consecutive solution levels plus the cached nonlinearity data the
// recursion needs: f-hat at levels n and n-1 and g-hat at level n-1.
struct StepperState {
  long long n = 0;
  double tau = 0.0;
  SpectralField prev;    // psi^{n-1}
  SpectralField curr;    // psi^n
  SpectralField f_curr;  // f(psi^n)-hat
  SpectralField f_prev;  // f(psi^{n-1})-hat
  SpectralField g_prev;  // g(psi^{n-1})-hat

  double time() const { return static_cast<double>(n) * tau; }
};

// State at n = 0 (prev == curr == interpolant of psi0); starting point for
// zero-length integrations.
StepperState initial_state(const GridSpec& grid, const ModelParams& params,
                           std::span<const cplx> psi0,
                           std::span<const cplx> psi1, double tau,
                           const StepOptions& options = {});

// psi^1 from the one-step propagator (c0, d0) plus the quadrature weights;
// g at level 0 uses the analytic derivative formula.
StepperState first_step(const GridSpec& grid, const ModelParams& params,
                        const CoefficientTable& table,
                        std::span<const cplx> psi0, std::span<const cplx> psi1,
                        double tau, const StepOptions& options = {});

// Two-level recursion n -> n+1; g at level n is the backward difference of
// the cached f-hat levels. Throws DivergenceError instead of propagating
// non-finite values.
StepperState step(StepperState state, const CoefficientTable& table,
                  const StepOptions& options = {});

using StepObserver = std::function<void(const StepperState&)>;

// March to t_final = n_steps * tau. Requires t_final to be an integer
// multiple of tau to 1e-9 relative. The observer (if any) sees every state
// from n = 1 on.
StepperState integrate(const GridSpec& grid, const ModelParams& params,
                       std::span<const cplx> psi0, std::span<const cplx> psi1,
                       double tau, double t_final,
                       const StepObserver& observer = {},
                       const StepOptions& options = {});

}  // namespace nlsw
