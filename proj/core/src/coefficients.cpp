#include "nlsw/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace nlsw {

namespace {
constexpr cplx I{0.0, 1.0};
}

ModeFrequencies mode_frequencies(double alpha, double mu) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("mode_frequencies: alpha must be positive");
  const double root = std::sqrt(1.0 + 4.0 * alpha * mu * mu);
  ModeFrequencies f;
  f.beta_plus = (1.0 + root) / (2.0 * alpha);
  f.beta_minus = -2.0 * mu * mu / (1.0 + root);
  f.beta_gap = root / alpha;
  return f;
}

double stable_sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

cplx phi2(cplx z) {
  if (std::abs(z) < 1e-4) {
    // 1/2 + z/6 + z^2/24 + z^3/120 + z^4/720
    return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

ModeCoefficients mode_coefficients(double alpha, double eps2p, double tau,
                                   const ModeFrequencies& f) {
  const double bp = f.beta_plus;
  const double bm = f.beta_minus;
  const double bg = f.beta_gap;

  const cplx sig_p = std::exp(I * (bp * tau / 2.0)) * stable_sinc(bp * tau / 2.0);
  const cplx sig_m = std::exp(I * (bm * tau / 2.0)) * stable_sinc(bm * tau / 2.0);
  // (1 - sigma(beta))/beta; exact -i*tau/2 at beta = 0.
  const cplx phi_p = -I * tau * phi2(I * (bp * tau));
  const cplx phi_m = -I * tau * phi2(I * (bm * tau));
  const cplx phis_p = phi_p * std::exp(-I * (bp * tau));
  const cplx phis_m = phi_m * std::exp(-I * (bm * tau));

  const cplx eia = std::exp(I * (tau / alpha));
  const cplx half = std::exp(I * (tau / (2.0 * alpha)));
  const double k = eps2p * tau / (alpha * bg);

  ModeCoefficients m;
  m.c0 = (bp * std::exp(I * (bm * tau)) - bm * std::exp(I * (bp * tau))) / bg;
  m.d0 = tau * half * stable_sinc(bg * tau / 2.0);
  m.c = -eia;
  m.d = 2.0 * half * std::cos(bg * tau / 2.0);
  m.pcoef = I * k * (sig_p - sig_m);
  m.pstar = I * k * eia * (std::conj(sig_p) - std::conj(sig_m));
  m.qcoef = -k * (phi_p - phi_m);
  m.qstar = -k * eia * (phis_p - phis_m);
  m.p_plus = I * k * std::conj(sig_p);
  m.p_minus = I * k * std::conj(sig_m);
  m.q_plus = -k * phis_p;
  m.q_minus = -k * phis_m;
  return m;
}

CoefficientTable::CoefficientTable(GridSpec grid, double alpha, double eps,
                                   int p, double tau)
    : grid_(grid), alpha_(alpha), eps_(eps), tau_(tau), p_(p) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("build_table: alpha must be positive");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("build_table: eps must lie in [0, 1]");
  if (p < 1)
    throw std::invalid_argument("build_table: p must be a positive integer");
  if (!(tau > 0.0))
    throw std::invalid_argument("build_table: tau must be positive");
  eps2p_ = std::pow(eps, 2 * p);

  const int M = grid_.size();
  freq_.resize(static_cast<size_t>(M));
  modes_.resize(static_cast<size_t>(M));
  for (int k = 0; k < M; ++k) {
    const int l = grid_.mode_at(k);
    freq_[static_cast<size_t>(k)] = mode_frequencies(alpha, grid_.wavenumber(l));
    modes_[static_cast<size_t>(k)] =
        mode_coefficients(alpha, eps2p_, tau, freq_[static_cast<size_t>(k)]);
  }
}

CoefficientTable build_table(const GridSpec& grid, double alpha, double eps,
                             int p, double tau) {
  return CoefficientTable(grid, alpha, eps, p, tau);
}

std::shared_ptr<const CoefficientTable> cached_table(const GridSpec& grid,
                                                     double alpha, double eps,
                                                     int p, double tau) {
  using Key = std::tuple<double, double, int, double, double, int, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const CoefficientTable>> cache;

  Key key{grid.a(), grid.b(), grid.size(), alpha, eps, p, tau};
  std::scoped_lock lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const CoefficientTable>(grid, alpha, eps, p, tau);
  cache.emplace(key, table);
  return table;
}

CoefficientBounds verify_bounds(const CoefficientTable& t) {
  CoefficientBounds b{};
  const double e2p = t.eps2p();
  const double tau = t.tau();
  const double pscale = e2p > 0.0 ? 1.0 / (e2p * tau) : 0.0;
  const double qscale = e2p > 0.0 ? 1.0 / (e2p * tau * tau) : 0.0;
  for (const auto& m : t.modes_natural()) {
    b.max_p_over_eps2p_tau =
        std::max(b.max_p_over_eps2p_tau, std::abs(m.pcoef) * pscale);
    b.max_pstar_over_eps2p_tau =
        std::max(b.max_pstar_over_eps2p_tau, std::abs(m.pstar) * pscale);
    b.max_q_over_eps2p_tau2 =
        std::max(b.max_q_over_eps2p_tau2, std::abs(m.qcoef) * qscale);
    b.max_qstar_over_eps2p_tau2 =
        std::max(b.max_qstar_over_eps2p_tau2, std::abs(m.qstar) * qscale);
    b.max_d0_over_tau2 = std::max(b.max_d0_over_tau2, std::abs(m.d0) / (tau * tau));
    b.max_d0_over_tau = std::max(b.max_d0_over_tau, std::abs(m.d0) / tau);
    b.max_c_deviation =
        std::max(b.max_c_deviation, std::abs(std::abs(m.c) - 1.0));
    b.max_c0_abs = std::max(b.max_c0_abs, std::abs(m.c0));
    b.max_d_abs = std::max(b.max_d_abs, std::abs(m.d));
  }
  return b;
}

void dump_csv(const CoefficientTable& t, std::ostream& out) {
  out << "l,mu,beta_plus,beta_minus";
  for (const char* name : {"c0", "d0", "c", "d", "p", "pstar", "q", "qstar",
                           "p_plus", "p_minus", "q_plus", "q_minus"})
    out << ',' << name << "_re," << name << "_im";
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  const GridSpec& g = t.grid();
  for (int l = g.min_mode(); l <= g.max_mode(); ++l) {
    const auto& f = t.freq(l);
    const auto& m = t.mode(l);
    out << l;
    put(g.wavenumber(l));
    put(f.beta_plus);
    put(f.beta_minus);
    for (const cplx* c : {&m.c0, &m.d0, &m.c, &m.d, &m.pcoef, &m.pstar,
                          &m.qcoef, &m.qstar, &m.p_plus, &m.p_minus,
                          &m.q_plus, &m.q_minus}) {
      put(c->real());
      put(c->imag());
    }
    out << '\n';
  }
}

}  // namespace nlsw
