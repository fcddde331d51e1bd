#pragma once

#include <complex>
#include <vector>

#include "smallcap/box.hpp"

namespace smallcap {

/// Complex samples on a periodic uniform grid, both views centered:
/// sample index k <-> physical point (k - n/2) * dx per axis, and after a
/// forward transform index k <-> frequency (k - n/2) / (n * dx).
struct GridFunction {
  int dim = 2;
  int n = 0;        // samples per axis, a power of two divisible by 4
  double dx = 0.5;  // physical spacing
  std::vector<std::complex<double>> samples;

  size_t total() const { return samples.size(); }
  double freq_spacing() const { return 1.0 / (n * dx); }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= dx;
    return v;
  }

  /// Physical coordinate of a flat index.
  Vec point(size_t flat) const;
  /// Frequency-lattice coordinate of a flat index.
  Vec freq_point(size_t flat) const;
  size_t flat_index(std::span<const int> idx) const;
};

GridFunction make_grid(int dim, int n, double dx = 0.5);

/// Grid sized for scale R: n = oversample * R samples per axis at dx = 1/2,
/// frequency span [-1, 1)^dim, frequency spacing 2/(oversample * R).
GridFunction grid_for_scale(int dim, double R, int oversample = 4);

/// Unitary centered discrete Fourier transform (inverse = adjoint).
void fft_in_place(GridFunction& f, bool inverse);
GridFunction transform(const GridFunction& f, bool inverse = false);

double l2_norm(const GridFunction& f);

/// (sum |f|^p dx^dim)^(1/p); p = infinity gives the max modulus.
double lp_norm(const GridFunction& f, double p);
double lp_norm(const GridFunction& f, double p, const OrientedBox& region);
double lp_norm_ball(const GridFunction& f, double p, const Vec& center, double radius);

}  // namespace smallcap
