#include "smallcap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace smallcap {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 transform of a contiguous line, no scaling.
void fft_line(std::complex<double>* a, int n, bool inverse, const std::vector<std::complex<double>>& roots) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    int stride = n / len;
    for (int blk = 0; blk < n; blk += len) {
      for (int k = 0; k < len / 2; ++k) {
        std::complex<double> w = roots[static_cast<size_t>(k * stride)];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[blk + k];
        std::complex<double> v = a[blk + k + len / 2] * w;
        a[blk + k] = u + v;
        a[blk + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

Vec GridFunction::point(size_t flat) const {
  Vec p = zero_vec(dim);
  size_t rem = flat;
  for (int i = dim - 1; i >= 0; --i) {
    auto idx = static_cast<int>(rem % static_cast<size_t>(n));
    rem /= static_cast<size_t>(n);
    p.v[i] = (idx - n / 2) * dx;
  }
  return p;
}

Vec GridFunction::freq_point(size_t flat) const {
  Vec p = point(flat);
  double scale = freq_spacing() / dx;
  return p * scale;
}

size_t GridFunction::flat_index(std::span<const int> idx) const {
  size_t f = 0;
  for (int i = 0; i < dim; ++i) f = f * static_cast<size_t>(n) + static_cast<size_t>(idx[static_cast<size_t>(i)]);
  return f;
}

GridFunction make_grid(int dim, int n, double dx) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
  if (!is_pow2(n) || n % 4 != 0) throw std::invalid_argument("grid size must be a power of two divisible by 4");
  if (!(dx > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  GridFunction f;
  f.dim = dim;
  f.n = n;
  f.dx = dx;
  size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<size_t>(n);
  f.samples.assign(total, {0.0, 0.0});
  return f;
}

GridFunction grid_for_scale(int dim, double R, int oversample) {
  double n = oversample * R;
  if (n > (dim == 2 ? double(1 << 14) : double(1 << 9)))
    throw std::runtime_error("grid_for_scale: grid would exceed the configured memory cap");
  return make_grid(dim, static_cast<int>(n), 0.5);
}

void fft_in_place(GridFunction& f, bool inverse) {
  const int n = f.n;
  const size_t total = f.total();

  // centered convention: (-1)^index twists on both sides; the residual phase
  // e^{-i pi n/2} is 1 because n is a multiple of 4
  auto checker = [&](std::complex<double>* data) {
    size_t rem[3];
    for (size_t s = 0; s < total; ++s) {
      size_t r = s;
      int parity = 0;
      for (int i = 0; i < f.dim; ++i) {
        rem[i] = r % static_cast<size_t>(n);
        parity ^= static_cast<int>(rem[i] & 1);
        r /= static_cast<size_t>(n);
      }
      if (parity) data[s] = -data[s];
    }
  };

  std::vector<std::complex<double>> roots(static_cast<size_t>(n / 2));
  for (int k = 0; k < n / 2; ++k) {
    double ang = -2.0 * M_PI * k / n;
    roots[static_cast<size_t>(k)] = {std::cos(ang), std::sin(ang)};
  }

  checker(f.samples.data());

  std::vector<std::complex<double>> line(static_cast<size_t>(n));
  if (f.dim == 2) {
    // rows are contiguous
    for (int r = 0; r < n; ++r) fft_line(f.samples.data() + static_cast<size_t>(r) * n, n, inverse, roots);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) line[static_cast<size_t>(r)] = f.samples[static_cast<size_t>(r) * n + c];
      fft_line(line.data(), n, inverse, roots);
      for (int r = 0; r < n; ++r) f.samples[static_cast<size_t>(r) * n + c] = line[static_cast<size_t>(r)];
    }
  } else {
    const size_t nn = static_cast<size_t>(n) * static_cast<size_t>(n);
    for (size_t plane = 0; plane < static_cast<size_t>(n); ++plane)
      for (int r = 0; r < n; ++r)
        fft_line(f.samples.data() + plane * nn + static_cast<size_t>(r) * n, n, inverse, roots);
    for (size_t plane = 0; plane < static_cast<size_t>(n); ++plane)
      for (int c = 0; c < n; ++c) {
        std::complex<double>* base = f.samples.data() + plane * nn + c;
        for (int r = 0; r < n; ++r) line[static_cast<size_t>(r)] = base[static_cast<size_t>(r) * n];
        fft_line(line.data(), n, inverse, roots);
        for (int r = 0; r < n; ++r) base[static_cast<size_t>(r) * n] = line[static_cast<size_t>(r)];
      }
    for (size_t rc = 0; rc < nn; ++rc) {
      std::complex<double>* base = f.samples.data() + rc;
      for (int p = 0; p < n; ++p) line[static_cast<size_t>(p)] = base[static_cast<size_t>(p) * nn];
      fft_line(line.data(), n, inverse, roots);
      for (int p = 0; p < n; ++p) base[static_cast<size_t>(p) * nn] = line[static_cast<size_t>(p)];
    }
  }

  checker(f.samples.data());

  double scale = std::pow(static_cast<double>(n), -0.5 * f.dim);
  for (auto& z : f.samples) z *= scale;
}

GridFunction transform(const GridFunction& f, bool inverse) {
  GridFunction g = f;
  fft_in_place(g, inverse);
  return g;
}

double l2_norm(const GridFunction& f) { return lp_norm(f, 2.0); }

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.samples) m = std::max(m, std::abs(z));
    return m;
  }
  double s = 0.0;
  for (const auto& z : f.samples) s += std::pow(std::norm(z), p / 2.0);
  return std::pow(s * f.cell_volume(), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p, const OrientedBox& region) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0, m = 0.0;
  for (size_t i = 0; i < f.total(); ++i) {
    if (!region.contains(f.point(i))) continue;
    double a = std::abs(f.samples[i]);
    m = std::max(m, a);
    s += std::pow(a, p);
  }
  if (std::isinf(p)) return m;
  return std::pow(s * f.cell_volume(), 1.0 / p);
}

double lp_norm_ball(const GridFunction& f, double p, const Vec& center, double radius) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0, m = 0.0;
  double r2 = radius * radius;
  for (size_t i = 0; i < f.total(); ++i) {
    Vec d = f.point(i) - center;
    if (d.dot(d) > r2) continue;
    double a = std::abs(f.samples[i]);
    m = std::max(m, a);
    s += std::pow(a, p);
  }
  if (std::isinf(p)) return m;
  return std::pow(s * f.cell_volume(), 1.0 / p);
}

}  // namespace smallcap
