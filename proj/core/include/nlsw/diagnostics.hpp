#pragma once

#include <utility>
#include <vector>

#include "nlsw/grid.hpp"
#include "nlsw/stepper.hpp"

namespace nlsw {

// sqrt(sum_l (1 + mu_l^2)^m |coeff_l|^2) over the field's index set; no
// domain-length prefactor.
double sobolev_norm(const SpectralField& field, int m);

struct GridNorms {
  double l2;    // sqrt(h * sum |v_j|^2)
  double linf;  // max |v_j|
};

GridNorms grid_norms(std::span<const cplx> values, double h);

struct ErrorReport {
  double h1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  // Context, filled by the caller.
  double t = 0.0;
  int M = 0;
  double tau = 0.0;
  double eps = 0.0;
  double beta_exp = 0.0;
};

// Difference measured at the reference resolution: the numeric field is
// zero-padded onto the reference grid first. h1 uses sobolev_norm(., 1);
// l2 is sobolev_norm(., 0) * sqrt(b - a) (Parseval); linf is the grid max
// at the reference nodes.
ErrorReport error_report(const SpectralField& numeric,
                         const SpectralField& reference);

struct ConservedQuantities {
  double mass = 0.0;
  double energy = 0.0;
  double t = 0.0;
};

// Rectangle-rule integrals on the periodic grid (spectrally accurate for
// smooth integrands); the gradient is spectral.
//   mass   = h sum_j |psi_j|^2 - 2 alpha Im(conj(psi_j) dpsi_j)
//   energy = h sum_j alpha|dpsi_j|^2 + |grad psi_j|^2
//                    + eps^{2p}/(p+1) |psi_j|^{2p+2}
ConservedQuantities conserved(std::span<const cplx> psi_values,
                              std::span<const cplx> dpsi_dt_values,
                              const GridSpec& grid, const ModelParams& params);

// Least-squares slope of log(err) against log(step). Requires at least two
// points, all positive.
double observed_order(std::span<const std::pair<double, double>> points);

}  // namespace nlsw
