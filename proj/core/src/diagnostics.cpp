#include "nlsw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlsw {

double sobolev_norm(const SpectralField& field, int m) {
  if (m < 0) throw std::invalid_argument("sobolev_norm: m must be >= 0");
  const GridSpec& g = field.grid();
  double sum = 0.0;
  for (int l = g.min_mode(); l <= g.max_mode(); ++l) {
    const double mu = g.wavenumber(l);
    double w = 1.0;
    const double base = 1.0 + mu * mu;
    for (int k = 0; k < m; ++k) w *= base;
    sum += w * std::norm(field.at_mode(l));
  }
  return std::sqrt(sum);
}

GridNorms grid_norms(std::span<const cplx> values, double h) {
  double sum = 0.0, mx = 0.0;
  for (const cplx& v : values) {
    sum += std::norm(v);
    mx = std::max(mx, std::abs(v));
  }
  return GridNorms{std::sqrt(h * sum), mx};
}

ErrorReport error_report(const SpectralField& numeric,
                         const SpectralField& reference) {
  const GridSpec& gn = numeric.grid();
  const GridSpec& gr = reference.grid();
  if (!gn.same_domain(gr))
    throw std::invalid_argument("error_report: fields live on different domains");
  if (gn.size() > gr.size())
    throw std::invalid_argument(
        "error_report: reference resolution must be >= numeric resolution");

  SpectralField diff = pad_to(numeric, gr.size());
  for (int l = gr.min_mode(); l <= gr.max_mode(); ++l)
    diff.at_mode(l) = reference.at_mode(l) - diff.at_mode(l);

  ErrorReport rep;
  rep.h1 = sobolev_norm(diff, 1);
  rep.l2 = sobolev_norm(diff, 0) * std::sqrt(gr.length());
  rep.linf = grid_norms(inverse_dft(diff), gr.h()).linf;
  return rep;
}

ConservedQuantities conserved(std::span<const cplx> psi_values,
                              std::span<const cplx> dpsi_dt_values,
                              const GridSpec& grid, const ModelParams& params) {
  const size_t M = static_cast<size_t>(grid.size());
  if (psi_values.size() != M || dpsi_dt_values.size() != M)
    throw std::invalid_argument("conserved: value lengths do not match M");

  SpectralField psi_hat = forward_dft(grid, psi_values);
  for (int l = grid.min_mode(); l <= grid.max_mode(); ++l)
    psi_hat.at_mode(l) *= cplx(0.0, grid.wavenumber(l));
  std::vector<cplx> grad = inverse_dft(psi_hat);

  const double e2p = params.eps2p();
  const int p = params.p;
  double mass = 0.0, energy = 0.0;
  for (size_t j = 0; j < M; ++j) {
    const double a2 = std::norm(psi_values[j]);
    mass += a2 - 2.0 * params.alpha *
                     std::imag(std::conj(psi_values[j]) * dpsi_dt_values[j]);
    double amp = a2;  // |psi|^{2p+2} = (|psi|^2)^{p+1}
    for (int k = 0; k < p; ++k) amp *= a2;
    energy += params.alpha * std::norm(dpsi_dt_values[j]) + std::norm(grad[j]) +
              e2p / (p + 1) * amp;
  }
  return ConservedQuantities{grid.h() * mass, grid.h() * energy, 0.0};
}

double observed_order(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2)
    throw std::invalid_argument("observed_order: need at least two points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [step, err] : points) {
    if (!(step > 0.0) || !(err > 0.0))
      throw std::invalid_argument("observed_order: steps and errors must be positive");
    sx += std::log(step);
    sy += std::log(err);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double num = 0.0, den = 0.0;
  for (const auto& [step, err] : points) {
    const double dx = std::log(step) - mx;
    num += dx * (std::log(err) - my);
    den += dx * dx;
  }
  return num / den;
}

}  // namespace nlsw
