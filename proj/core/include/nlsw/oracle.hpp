#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "nlsw/grid.hpp"
#include "nlsw/ref_cache.hpp"
#include "nlsw/stepper.hpp"

namespace nlsw {

// First-order form of the Fourier-space ODE system
//   i u_l' - alpha u_l'' - mu_l^2 u_l - eps^{2p} f_l-hat = 0,
// with u = psi-hat and v = d/dt psi-hat carried exactly.
struct OdeState {
  SpectralField u;
  SpectralField v;
  double t = 0.0;
};

struct OdeRhs {
  SpectralField du;
  SpectralField dv;
};

// du = v; dv_l = (i v_l - mu_l^2 u_l - eps^{2p} f_l-hat) / alpha, with
// f-hat obtained pseudospectrally (inverse transform, pointwise
// nonlinearity, forward transform).
OdeRhs ode_rhs(const OdeState& state, const ModelParams& params);

// Classical fourth-order Runge-Kutta trajectory of ode_rhs; the
// implementation-independent oracle for the EWI path.
OdeState rk4_integrate(const GridSpec& grid, const ModelParams& params,
                       std::span<const cplx> psi0, std::span<const cplx> psi1,
                       double tau_oracle, double t_final,
                       const StepOptions& options = {});

using Sampler = std::function<cplx(double)>;

// Fine-mesh EWI reference protocol: defaults M = 128 on (-pi, pi)
// (h = pi/64) and tau = 5e-4; both overridable.
struct ReferenceProtocol {
  int M = 128;
  double tau = 5e-4;
};

// Reference solution at t = T/eps^beta on grid_fine, computed with the EWI
// stepper itself. When a cache is supplied, hits are returned from disk and
// misses are stored after the run (atomic write-then-rename).
SpectralField make_reference(const GridSpec& grid_fine,
                             const ModelParams& params, const Sampler& psi0_fn,
                             const Sampler& psi1_fn, double ref_tau,
                             const ReferenceCache* cache = nullptr);

}  // namespace nlsw
