#pragma once

#include <random>
#include <vector>

#include "nlsw/coefficients.hpp"
#include "nlsw/diagnostics.hpp"
#include "nlsw/grid.hpp"
#include "nlsw/study.hpp"

namespace nlsw::testing {

inline std::vector<cplx> sample(const GridSpec& grid, double (*fn)(double)) {
  std::vector<cplx> out(static_cast<size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j)
    out[static_cast<size_t>(j)] = fn(grid.node(j));
  return out;
}

inline std::vector<cplx> benchmark_wave(const GridSpec& grid) {
  return sample(grid, &default_initial_wave);
}

inline std::vector<cplx> benchmark_velocity(const GridSpec& grid) {
  return sample(grid, &default_initial_velocity);
}

inline std::vector<cplx> random_samples(int M, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> out(static_cast<size_t>(M));
  for (auto& v : out) v = cplx(dist(rng), dist(rng));
  return out;
}

inline SpectralField random_field(const GridSpec& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpectralField f(grid);
  for (auto& c : f.raw()) c = cplx(dist(rng), dist(rng));
  return f;
}

// Exact evolution of one Fourier mode of the linear flow (eps = 0):
// u(t) = A e^{i beta+ t} + B e^{i beta- t} with A, B fixed by (u0, v0).
struct ModeEvolution {
  cplx u;
  cplx v;
};

inline ModeEvolution evolve_mode(const ModeFrequencies& f, cplx u0, cplx v0,
                                 double t) {
  const cplx I{0.0, 1.0};
  const cplx A = -(f.beta_minus * u0 + I * v0) / f.beta_gap;
  const cplx B = (f.beta_plus * u0 + I * v0) / f.beta_gap;
  const cplx ep = std::exp(I * (f.beta_plus * t));
  const cplx em = std::exp(I * (f.beta_minus * t));
  return {A * ep + B * em,
          I * f.beta_plus * A * ep + I * f.beta_minus * B * em};
}

// H^1 distance between two coefficient fields on the same grid.
inline double h1_diff(const SpectralField& x, const SpectralField& y) {
  SpectralField d = x;
  for (int l = d.grid().min_mode(); l <= d.grid().max_mode(); ++l)
    d.at_mode(l) -= y.at_mode(l);
  return sobolev_norm(d, 1);
}

}  // namespace nlsw::testing
