#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "nlsw/grid.hpp"

namespace nlsw {

// Characteristic frequencies of the linear modal equation
// alpha*lambda^2 - lambda - mu^2 = 0:
//   beta_plus  = (1 + sqrt(1 + 4 alpha mu^2)) / (2 alpha)
//   beta_minus = (1 - sqrt(1 + 4 alpha mu^2)) / (2 alpha)
//   beta_gap   = beta_plus - beta_minus = sqrt(1 + 4 alpha mu^2) / alpha
// beta_minus is evaluated through the cancellation-free quotient
// -2 mu^2 / (1 + sqrt(1 + 4 alpha mu^2)).
struct ModeFrequencies {
  double beta_plus;
  double beta_minus;
  double beta_gap;
};

ModeFrequencies mode_frequencies(double alpha, double mu);

// sin(x)/x, switching to the Taylor polynomial 1 - x^2/6 + x^4/120 for
// |x| < 1e-4 (truncation error ~x^6/5040, far below machine epsilon there).
double stable_sinc(double x);

// (e^z - 1 - z)/z^2 with the same small-argument switch. The quadrature
// ratio (1 - sigma(beta, tau))/beta equals -i*tau*phi2(i*beta*tau), which
// is finite at beta = 0 and free of subtractive cancellation elsewhere.
cplx phi2(cplx z);

// Per-mode time-stepping coefficients. The one-step propagator uses
// (c0, d0); the two-level recursion uses (c, d) plus the quadrature
// weights (pcoef, qcoef, pstar, qstar). p_plus/p_minus/q_plus/q_minus
// are the split parts satisfying
//   pcoef = e^{i beta_plus tau} p_plus - e^{i beta_minus tau} p_minus
//   pstar = e^{i tau/alpha} (p_plus - p_minus)
// and the analogous q identities.
struct ModeCoefficients {
  cplx c0, d0, c, d;
  cplx pcoef, pstar, qcoef, qstar;
  cplx p_plus, p_minus, q_plus, q_minus;
};

// eps2p is the nonlinearity prefactor eps^(2p); it enters every quadrature
// weight as an exact multiplier and nothing else, so rescaling eps rescales
// pcoef/qcoef/pstar/qstar bitwise.
ModeCoefficients mode_coefficients(double alpha, double eps2p, double tau,
                                   const ModeFrequencies& freq);

class CoefficientTable {
public:
  CoefficientTable(GridSpec grid, double alpha, double eps, int p, double tau);

  const GridSpec& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  double eps() const { return eps_; }
  int p() const { return p_; }
  double tau() const { return tau_; }
  double eps2p() const { return eps2p_; }

  const ModeFrequencies& freq(int l) const { return freq_[idx(l)]; }
  const ModeCoefficients& mode(int l) const { return modes_[idx(l)]; }

  // Natural-order views used by the stepper hot loop.
  std::span<const ModeCoefficients> modes_natural() const { return modes_; }

private:
  size_t idx(int l) const { return static_cast<size_t>(grid_.index_of(l)); }

  GridSpec grid_;
  double alpha_, eps_, tau_, eps2p_;
  int p_;
  std::vector<ModeFrequencies> freq_;
  std::vector<ModeCoefficients> modes_;
};

CoefficientTable build_table(const GridSpec& grid, double alpha, double eps,
                             int p, double tau);

// Process-wide cache; tables are immutable and shared. Keyed by the exact
// (grid, alpha, eps, p, tau) tuple.
std::shared_ptr<const CoefficientTable> cached_table(const GridSpec& grid,
                                                     double alpha, double eps,
                                                     int p, double tau);

// Empirical magnitude report backing the coefficient-bound checks.
struct CoefficientBounds {
  double max_p_over_eps2p_tau;    // max_l |pcoef| / (eps^{2p} tau)
  double max_pstar_over_eps2p_tau;
  double max_q_over_eps2p_tau2;   // max_l |qcoef| / (eps^{2p} tau^2)
  double max_qstar_over_eps2p_tau2;
  double max_d0_over_tau2;        // recorded, not asserted (see tests)
  double max_d0_over_tau;
  double max_c_deviation;         // max_l ||c| - 1|
  double max_c0_abs;              // max_l |c0| (theory: <= 1)
  double max_d_abs;               // max_l |d|  (theory: <= 2)
};

CoefficientBounds verify_bounds(const CoefficientTable& table);

// CSV debug dump: l, mu, beta_plus, beta_minus, then re/im pairs of the
// 12 coefficients in declaration order. For cross-implementation diffing.
void dump_csv(const CoefficientTable& table, std::ostream& out);

}  // namespace nlsw
