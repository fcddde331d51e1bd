#include "smallcap/extremals.hpp"

#include <cmath>

namespace smallcap {

double predicted_exponent(const ExponentQuery& q) {
  if (!(q.p >= 2.0)) throw std::invalid_argument("predicted_exponent: p must be >= 2");
  if (!(q.exponent >= 0.5 && q.exponent <= 1.0))
    throw std::invalid_argument("predicted_exponent: exponent out of [1/2, 1]");
  double a = q.exponent, p = q.p;
  if (q.curve == Curve::parabola) {
    if (p >= 4.0 * a + 2.0) return a * (0.5 - 2.0 / p);
    return (a - 0.5) * (0.5 - 1.0 / p);
  }
  if (p >= 8.0) return a / 2.0;
  if (p >= 4.0) return a / 2.0 + 0.25 - 2.0 / p;
  return (a - 0.5) * (1.0 - 2.0 / p);
}

namespace {

// continuation of the continuum pairing f(x) = int fhat e^{2 pi i xi x} d xi:
// the unitary inverse transform carries an extra (sqrt(n) dxi)^dim
double continuum_scale(const GridFunction& g) {
  return std::pow(std::sqrt(static_cast<double>(g.n)) * g.freq_spacing(), g.dim);
}

GridFunction spectrum_from_partition_sum(const Partition& part) {
  GridFunction fhat = make_grid(part.dim, part.n, part.dx);
  for (const Multiplier& m : part.mult)
    for (size_t e = 0; e < m.idx.size(); ++e)
      fhat.samples[static_cast<size_t>(m.idx[e])] += m.value[e];
  double scale = continuum_scale(fhat);
  fft_in_place(fhat, true);
  for (auto& z : fhat.samples) z *= scale;
  return fhat;
}

}  // namespace

Partition concentrated_partition(double R, double alpha, int oversample) {
  GridFunction grid = grid_for_scale(2, R, oversample);
  return smooth_partition(parabola_caps(R, alpha), grid);
}

Partition flat_partition(double R, int oversample) {
  GridFunction grid = grid_for_scale(2, R, oversample);
  return smooth_partition(parabola_caps(R, 0.5), grid);
}

Partition cone_partition(double R, int oversample) {
  GridFunction grid = grid_for_scale(3, R, oversample);
  return smooth_partition(cone_caps(R, 0.5), grid);
}

GridFunction concentrated_parabola(double R, double alpha, int oversample) {
  return spectrum_from_partition_sum(concentrated_partition(R, alpha, oversample));
}

GridFunction flat_parabola(double R, size_t theta_index, int oversample) {
  Partition part = flat_partition(R, oversample);
  if (theta_index >= part.size()) throw std::invalid_argument("flat_parabola: bad theta index");
  GridFunction fhat = make_grid(part.dim, part.n, part.dx);
  const Multiplier& m = part.mult[theta_index];
  for (size_t e = 0; e < m.idx.size(); ++e)
    fhat.samples[static_cast<size_t>(m.idx[e])] = m.value[e];
  double scale = continuum_scale(fhat);
  fft_in_place(fhat, true);
  for (auto& z : fhat.samples) z *= scale;
  return fhat;
}

GridFunction cone_bump(double R, int oversample) {
  return spectrum_from_partition_sum(cone_partition(R, oversample));
}

IdealizedField indicator_model(const CapFamily& family) {
  IdealizedField f;
  f.boxes.reserve(family.size());
  f.amplitude.reserve(family.size());
  for (const OrientedBox& cap : family.caps) {
    OrientedBox d = dual_box(cap);
    f.boxes.push_back(d);
    f.amplitude.push_back(1.0 / d.volume());
  }
  return f;
}

namespace {

// Unit-lattice rasterizer for sums of weighted rotated boxes in 2D.
// Accumulates per-row difference arrays for  sum_i w_i 1_{B_i}  and returns
// dense rows on demand.
class BoxRaster {
 public:
  BoxRaster(int64_t extent) : extent_(extent), width_(2 * extent + 1) {
    rows_.resize(static_cast<size_t>(width_));
  }

  void add(const OrientedBox& b, double weight) {
    double ty = b.axes[0].v[1] * b.half[0], ny = b.axes[1].v[1] * b.half[1];
    double yext = std::fabs(ty) + std::fabs(ny);
    auto ylo = static_cast<int64_t>(std::ceil(b.center.v[1] - yext - 1e-9));
    auto yhi = static_cast<int64_t>(std::floor(b.center.v[1] + yext + 1e-9));
    ylo = std::max(ylo, -extent_);
    yhi = std::min(yhi, extent_);
    for (int64_t y = ylo; y <= yhi; ++y) {
      double u = static_cast<double>(y) - b.center.v[1];
      double lo = -1e300, hi = 1e300;
      bool ok = true;
      for (int ax = 0; ax < 2 && ok; ++ax) {
        double cx = b.axes[ax].v[0], cy = b.axes[ax].v[1], h = b.half[ax];
        if (std::fabs(cx) < 1e-12) {
          ok = std::fabs(cy * u) <= h;
        } else {
          double a = (-h - cy * u) / cx, c = (h - cy * u) / cx;
          lo = std::max(lo, b.center.v[0] + std::min(a, c));
          hi = std::min(hi, b.center.v[0] + std::max(a, c));
        }
      }
      if (!ok || lo > hi) continue;
      auto xlo = static_cast<int64_t>(std::ceil(lo - 1e-9));
      auto xhi = static_cast<int64_t>(std::floor(hi + 1e-9));
      xlo = std::max(xlo, -extent_);
      xhi = std::min(xhi, extent_);
      if (xlo > xhi) continue;
      rows_[static_cast<size_t>(y + extent_)].push_back({xlo, weight});
      rows_[static_cast<size_t>(y + extent_)].push_back({xhi + 1, -weight});
    }
  }

  /// Accumulate sum over the lattice of value^{p/2}, split by dyadic shells
  /// of |x| (shell k covers (2^{k-1}, 2^k], shell 0 covers [0, 1]).
  void moment(double p, std::vector<double>& shells, double& total) const {
    std::vector<double> line(static_cast<size_t>(width_), 0.0);
    for (int64_t y = -extent_; y <= extent_; ++y) {
      const auto& evs = rows_[static_cast<size_t>(y + extent_)];
      if (evs.empty()) continue;
      std::fill(line.begin(), line.end(), 0.0);
      for (const auto& e : evs) line[static_cast<size_t>(e.x + extent_)] += e.w;
      double run = 0.0;
      for (int64_t x = -extent_; x <= extent_; ++x) {
        run += line[static_cast<size_t>(x + extent_)];
        if (run <= 1e-300) continue;
        double v = std::pow(run, p / 2.0);
        total += v;
        double rad = std::hypot(static_cast<double>(x), static_cast<double>(y));
        size_t k = rad <= 1.0 ? 0 : static_cast<size_t>(std::ceil(std::log2(rad)));
        if (shells.size() <= k) shells.resize(k + 1, 0.0);
        shells[k] += v;
      }
    }
  }

 private:
  struct Ev {
    int64_t x;
    double w;
  };
  int64_t extent_, width_;
  std::vector<std::vector<Ev>> rows_;
};

int64_t family_extent(const IdealizedField& f) {
  double r = 0.0;
  for (const OrientedBox& b : f.boxes) r = std::max(r, b.circumradius());
  return static_cast<int64_t>(std::ceil(r)) + 1;
}

}  // namespace

IndicatorSums concentrated_indicator_sums(double R, double alpha, double p) {
  auto fam = parabola_caps(R, alpha);
  IdealizedField f = indicator_model(fam);
  int64_t extent = family_extent(f);
  if (extent > 60000) throw std::runtime_error("concentrated_indicator_sums: lattice exceeds the cap");
  BoxRaster raster(extent);
  for (size_t i = 0; i < f.boxes.size(); ++i) raster.add(f.boxes[i], f.amplitude[i] * f.amplitude[i]);
  IndicatorSums out;
  raster.moment(p, out.shell_sums, out.total);

  // bush witness: every dual contains B(0,1), so f is constant there
  double amp = 0.0;
  for (double a : f.amplitude) amp += a;
  out.lhs_value = amp * std::pow(5.0, 1.0 / p);  // five unit-lattice points in the closed ball
  return out;
}

IndicatorSums flat_indicator_sums(double R, double alpha, double p) {
  auto fam = parabola_caps(R, alpha);
  auto thetas = parabola_caps(R, 0.5);
  size_t th = thetas.size() / 2;  // interval just right of 0
  double lo = thetas.anchors[th] - 1.0 / static_cast<double>(thetas.size());
  double hi = thetas.anchors[th] + 1.0 / static_cast<double>(thetas.size());

  IdealizedField f;
  for (size_t g = 0; g < fam.size(); ++g) {
    if (fam.anchors[g] < lo || fam.anchors[g] >= hi) continue;
    OrientedBox d = dual_box(fam.caps[g]);
    f.boxes.push_back(d);
    f.amplitude.push_back(1.0 / d.volume());
  }
  if (f.boxes.empty()) throw std::runtime_error("flat_indicator_sums: empty theta");

  int64_t extent = family_extent(f);
  if (extent > 60000) throw std::runtime_error("flat_indicator_sums: lattice exceeds the cap");
  BoxRaster raster(extent);
  for (size_t i = 0; i < f.boxes.size(); ++i) raster.add(f.boxes[i], f.amplitude[i] * f.amplitude[i]);
  IndicatorSums out;
  raster.moment(p, out.shell_sums, out.total);
  out.lhs_value = std::pow(dual_box(thetas.caps[th]).volume(), 1.0 / p - 1.0);
  return out;
}

double empirical_ratio(const GridFunction& f, const Partition& part, double p) {
  double denom = lp_norm(square_function(f, part), p);
  if (denom == 0.0) throw std::runtime_error("empirical_ratio: zero square-function norm");
  return lp_norm(f, p) / denom;
}

}  // namespace smallcap
