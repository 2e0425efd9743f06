#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nlsw {

using cplx = std::complex<double>;

// Uniform periodic grid on (a, b) with an even number of nodes M.
// Nodes are x_j = a + j*h, h = (b-a)/M, and the spectral basis is
// e^{i mu_l (x-a)} for modes l in {-M/2, ..., M/2-1}, mu_l = 2*pi*l/(b-a).
//
// Coefficient vectors are stored in natural FFT order internally; every
// public accessor speaks in the signed mode index l.
class GridSpec {
public:
  GridSpec(double a, double b, int M);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  int size() const { return M_; }
  double h() const { return h_; }

  double node(int j) const { return a_ + j * h_; }
  std::vector<double> nodes() const;

  int min_mode() const { return -M_ / 2; }
  int max_mode() const { return M_ / 2 - 1; }
  double wavenumber(int l) const;

  // Natural-order slot of mode l, and its inverse. index_of rejects modes
  // outside {-M/2, ..., M/2-1} rather than aliasing them.
  int index_of(int l) const;
  int mode_at(int k) const { return k < M_ / 2 ? k : k - M_; }

  bool same_domain(const GridSpec& other) const;
  bool operator==(const GridSpec& other) const;

private:
  double a_, b_, h_;
  int M_;
};

GridSpec make_grid(double a, double b, int M);

// Complex Fourier coefficients of a trigonometric polynomial on a GridSpec.
// Immutable-by-convention after it is filled; cheap to copy and safe to
// share between threads once construction is done.
class SpectralField {
public:
  explicit SpectralField(GridSpec grid)
      : grid_(grid), coeffs_(static_cast<size_t>(grid.size())) {}
  SpectralField(GridSpec grid, std::vector<cplx> natural_order);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  cplx& at_mode(int l) { return coeffs_[static_cast<size_t>(grid_.index_of(l))]; }
  const cplx& at_mode(int l) const {
    return coeffs_[static_cast<size_t>(grid_.index_of(l))];
  }

  std::span<cplx> raw() { return coeffs_; }
  std::span<const cplx> raw() const { return coeffs_; }

private:
  GridSpec grid_;
  std::vector<cplx> coeffs_;
};

// DFT with the 1/M normalization on the forward side:
//   coeff_l = (1/M) sum_j samples_j e^{-i mu_l (x_j - a)}.
// Since x_j - a = j*h, the kernel reduces to e^{-2 pi i l j / M} for any
// anchor a, so a plain FFT matches the x=a anchored basis exactly.
SpectralField forward_dft(const GridSpec& grid, std::span<const cplx> samples);

// Exact inverse: samples_j = sum_l coeff_l e^{i mu_l (x_j - a)}.
std::vector<cplx> inverse_dft(const SpectralField& field);

// Zero-pad onto a finer grid over the same domain; represents the same
// trigonometric polynomial.
SpectralField pad_to(const SpectralField& field, int M_target);

}  // namespace nlsw
