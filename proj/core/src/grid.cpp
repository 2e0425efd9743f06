#include "nlsw/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlsw {

namespace {

// One pair of c2c plans per transform size. Plans are created with
// FFTW_UNALIGNED so fftw_execute_dft can run on arbitrary caller buffers;
// execution on distinct buffers is thread-safe, plan creation is not.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  Plans get(int M) {
    std::scoped_lock lock(mutex_);
    auto it = plans_.find(M);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> in(static_cast<size_t>(M)), out(static_cast<size_t>(M));
    auto* fin = reinterpret_cast<fftw_complex*>(in.data());
    auto* fout = reinterpret_cast<fftw_complex*>(out.data());
    Plans p;
    p.forward = fftw_plan_dft_1d(M, fin, fout, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(M, fin, fout, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(M, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [m, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

GridSpec::GridSpec(double a, double b, int M) : a_(a), b_(b), M_(M) {
  if (!(b > a))
    throw std::invalid_argument("make_grid: b must exceed a (got b <= a)");
  if (M % 2 != 0)
    throw std::invalid_argument("make_grid: M must be even (got " +
                                std::to_string(M) + ")");
  if (M < 4)
    throw std::invalid_argument("make_grid: M must be at least 4 (got " +
                                std::to_string(M) + ")");
  h_ = (b - a) / M;
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> xs(static_cast<size_t>(M_));
  for (int j = 0; j < M_; ++j) xs[static_cast<size_t>(j)] = node(j);
  return xs;
}

double GridSpec::wavenumber(int l) const {
  return 2.0 * std::numbers::pi * l / (b_ - a_);
}

int GridSpec::index_of(int l) const {
  if (l < -M_ / 2 || l >= M_ / 2)
    throw std::out_of_range("mode index " + std::to_string(l) +
                            " outside {-M/2, ..., M/2-1} for M = " +
                            std::to_string(M_));
  return l >= 0 ? l : l + M_;
}

bool GridSpec::same_domain(const GridSpec& other) const {
  return a_ == other.a_ && b_ == other.b_;
}

bool GridSpec::operator==(const GridSpec& other) const {
  return same_domain(other) && M_ == other.M_;
}

GridSpec make_grid(double a, double b, int M) { return GridSpec(a, b, M); }

SpectralField::SpectralField(GridSpec grid, std::vector<cplx> natural_order)
    : grid_(grid), coeffs_(std::move(natural_order)) {
  if (static_cast<int>(coeffs_.size()) != grid_.size())
    throw std::invalid_argument("SpectralField: coefficient count " +
                                std::to_string(coeffs_.size()) +
                                " does not match M = " +
                                std::to_string(grid_.size()));
}

SpectralField forward_dft(const GridSpec& grid, std::span<const cplx> samples) {
  const int M = grid.size();
  if (static_cast<int>(samples.size()) != M)
    throw std::invalid_argument("forward_dft: sample count " +
                                std::to_string(samples.size()) +
                                " does not match M = " + std::to_string(M));
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out(static_cast<size_t>(M));
  auto plans = PlanCache::instance().get(M);
  fftw_execute_dft(plans.forward, as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / M;
  for (auto& c : out) c *= scale;
  return SpectralField(grid, std::move(out));
}

std::vector<cplx> inverse_dft(const SpectralField& field) {
  const int M = field.size();
  std::vector<cplx> in(field.raw().begin(), field.raw().end());
  std::vector<cplx> out(static_cast<size_t>(M));
  auto plans = PlanCache::instance().get(M);
  fftw_execute_dft(plans.backward, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

SpectralField pad_to(const SpectralField& field, int M_target) {
  const GridSpec& g = field.grid();
  if (M_target < g.size())
    throw std::invalid_argument(
        "pad_to: M_target = " + std::to_string(M_target) +
        " is smaller than the field's M = " + std::to_string(g.size()));
  GridSpec fine = make_grid(g.a(), g.b(), M_target);
  SpectralField out(fine);
  for (int l = g.min_mode(); l <= g.max_mode(); ++l)
    out.at_mode(l) = field.at_mode(l);
  return out;
}

}  // namespace nlsw
