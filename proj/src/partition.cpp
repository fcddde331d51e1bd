#include "smallcap/partition.hpp"

#include <cmath>

namespace smallcap {

namespace {

// C^2 taper: 1 on the box, quintic smoothstep down to 0 at the (1+s)-dilate.
double axis_profile(double u, double smoothness) {
  double a = std::fabs(u);
  if (a <= 1.0) return 1.0;
  double t = (a - 1.0) / smoothness;
  if (t >= 1.0) return 0.0;
  double q = t * t * t * (t * (6.0 * t - 15.0) + 10.0);
  return 1.0 - q;
}

double bump(const OrientedBox& cap, const Vec& xi, double smoothness) {
  double b = 1.0;
  for (int i = 0; i < cap.dim; ++i) {
    double t = (xi - cap.center).dot(cap.axes[i]) / cap.half[i];
    b *= axis_profile(t, smoothness);
    if (b == 0.0) return 0.0;
  }
  return b;
}

// lattice index ranges covering the support dilate of a cap
struct IndexRange {
  std::array<int, 3> lo{0, 0, 0}, hi{-1, -1, -1};
};

IndexRange support_range(const OrientedBox& cap, double smoothness, int n, double dxi) {
  IndexRange r;
  for (int j = 0; j < cap.dim; ++j) {
    double ext = 0.0;
    for (int i = 0; i < cap.dim; ++i) ext += (1.0 + smoothness) * cap.half[i] * std::fabs(cap.axes[i].v[j]);
    double c = cap.center.v[j];
    r.lo[j] = std::max(0, static_cast<int>(std::ceil((c - ext) / dxi)) + n / 2);
    r.hi[j] = std::min(n - 1, static_cast<int>(std::floor((c + ext) / dxi)) + n / 2);
  }
  return r;
}

}  // namespace

std::vector<int64_t> covered_lattice_points(Curve curve, double R, const GridFunction& grid) {
  std::vector<int64_t> out;
  const int n = grid.n;
  const double dxi = grid.freq_spacing();
  if (curve == Curve::parabola) {
    for (int i = 0; i < n; ++i) {
      double x = (i - n / 2) * dxi;
      if (std::fabs(x) > 1.0) continue;
      for (int j = 0; j < n; ++j) {
        double y = (j - n / 2) * dxi;
        if (std::fabs(y - x * x) <= 1.0 / R)
          out.push_back(static_cast<int64_t>(i) * n + j);
      }
    }
  } else {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      double x = (i - n / 2) * dxi;
      for (int j = 0; j < n; ++j) {
        double y = (j - n / 2) * dxi;
        double rho = std::hypot(x, y);
        for (int k = 0; k < n; ++k) {
          double z = (k - n / 2) * dxi;
          if (z < 0.5 || z > 1.0) continue;
          if (std::fabs(rho - z) * inv_sqrt2 <= 1.0 / R && 0.5 * (rho + z) >= 0.5 && 0.5 * (rho + z) <= 1.0)
            out.push_back((static_cast<int64_t>(i) * n + j) * n + k);
        }
      }
    }
  }
  return out;
}

Partition smooth_partition(const CapFamily& family, int n, double dx, double smoothness,
                           bool check_coverage) {
  if (!(smoothness > 0.0 && smoothness <= 1.0))
    throw std::invalid_argument("smooth_partition: smoothness must lie in (0,1]");
  GridFunction grid = make_grid(family.caps.at(0).dim, n, dx);
  const double dxi = grid.freq_spacing();
  const int dim = grid.dim;

  Partition part;
  part.dim = dim;
  part.n = n;
  part.dx = dx;
  part.family = family;
  part.smoothness = smoothness;
  part.mult.resize(family.size());
  part.support_mask.assign(grid.total(), 0);

  std::vector<double> raw_sum(grid.total(), 0.0);

  for (size_t g = 0; g < family.size(); ++g) {
    const OrientedBox& cap = family.caps[g];
    IndexRange r = support_range(cap, smoothness, n, dxi);
    Multiplier& m = part.mult[g];
    std::array<int, 3> ix{};
    for (ix[0] = r.lo[0]; ix[0] <= r.hi[0]; ++ix[0])
      for (ix[1] = r.lo[1]; ix[1] <= r.hi[1]; ++ix[1])
        for (ix[2] = (dim == 3 ? r.lo[2] : 0); ix[2] <= (dim == 3 ? r.hi[2] : 0); ++ix[2]) {
          Vec xi = zero_vec(dim);
          for (int a = 0; a < dim; ++a) xi.v[a] = (ix[a] - n / 2) * dxi;
          double b = bump(cap, xi, smoothness);
          if (b <= 0.0) continue;
          int64_t flat = ix[0];
          for (int a = 1; a < dim; ++a) flat = flat * n + ix[a];
          m.idx.push_back(flat);
          m.value.push_back(b);
          raw_sum[static_cast<size_t>(flat)] += b;
          part.support_mask[static_cast<size_t>(flat)] = 1;
        }
  }

  if (check_coverage) {
    part.covered = covered_lattice_points(family.curve, family.R, grid);
    for (int64_t flat : part.covered)
      if (raw_sum[static_cast<size_t>(flat)] == 0.0)
        throw std::runtime_error("smooth_partition: covered lattice point with zero bump sum (coverage failure)");
  }

  for (auto& m : part.mult)
    for (size_t e = 0; e < m.idx.size(); ++e) {
      double s = raw_sum[static_cast<size_t>(m.idx[e])];
      if (s > 1.0) m.value[e] /= s;
    }
  return part;
}

Partition smooth_partition(const CapFamily& family, const GridFunction& grid, double smoothness,
                           bool check_coverage) {
  return smooth_partition(family, grid.n, grid.dx, smoothness, check_coverage);
}

double mass_outside_support(const GridFunction& fhat, const Partition& part) {
  double in = 0.0, out = 0.0;
  for (size_t i = 0; i < fhat.total(); ++i) {
    double m = std::norm(fhat.samples[i]);
    if (part.support_mask[i]) in += m; else out += m;
  }
  double total = in + out;
  return total > 0.0 ? out / total : 0.0;
}

GridFunction project_spectrum(const GridFunction& fhat, const Multiplier& psi) {
  GridFunction ghat = make_grid(fhat.dim, fhat.n, fhat.dx);
  for (size_t e = 0; e < psi.idx.size(); ++e) {
    auto i = static_cast<size_t>(psi.idx[e]);
    ghat.samples[i] = fhat.samples[i] * psi.value[e];
  }
  return ghat;
}

GridFunction cap_projection(const GridFunction& f, const Partition& part, size_t cap_index, double outside_tol) {
  if (cap_index >= part.mult.size()) throw std::invalid_argument("cap_projection: bad cap index");
  GridFunction fhat = transform(f);
  double outside = mass_outside_support(fhat, part);
  if (outside > outside_tol)
    throw std::runtime_error("cap_projection: spectrum mass outside the family neighborhood: " +
                             std::to_string(outside));
  GridFunction ghat = project_spectrum(fhat, part.mult[cap_index]);
  fft_in_place(ghat, true);
  return ghat;
}

GridFunction square_function(const GridFunction& f, const Partition& part, double outside_tol) {
  GridFunction fhat = transform(f);
  double outside = mass_outside_support(fhat, part);
  if (outside > outside_tol)
    throw std::runtime_error("square_function: spectrum mass outside the family neighborhood: " +
                             std::to_string(outside));
  GridFunction acc = make_grid(f.dim, f.n, f.dx);
  for (const Multiplier& psi : part.mult) {
    GridFunction piece = project_spectrum(fhat, psi);
    fft_in_place(piece, true);
    for (size_t i = 0; i < acc.total(); ++i)
      acc.samples[i] += std::norm(piece.samples[i]);
  }
  for (auto& z : acc.samples) z = std::sqrt(z.real());
  return acc;
}

GridFunction reconstruct_sum(const GridFunction& f, const Partition& part) {
  GridFunction fhat = transform(f);
  GridFunction acc = make_grid(f.dim, f.n, f.dx);
  for (const Multiplier& psi : part.mult) {
    GridFunction piece = project_spectrum(fhat, psi);
    fft_in_place(piece, true);
    for (size_t i = 0; i < acc.total(); ++i) acc.samples[i] += piece.samples[i];
  }
  return acc;
}

double box_weight(const OrientedBox& box, const Vec& x) {
  double w = 1.0;
  for (int i = 0; i < box.dim; ++i) {
    double u = std::fabs((x - box.center).dot(box.axes[i])) / box.half[i];
    if (u > 1.0) w *= std::pow(1.0 + (u - 1.0) / 2.0, -20.0);
  }
  return w;
}

double local_orthogonality_defect(std::span<const GridFunction> parts, const OrientedBox& box) {
  if (parts.empty()) throw std::invalid_argument("local_orthogonality_defect: no parts");
  const GridFunction& ref = parts.front();
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < ref.total(); ++i) {
    Vec x = ref.point(i);
    std::complex<double> s{0.0, 0.0};
    double sq = 0.0;
    for (const GridFunction& f : parts) {
      s += f.samples[i];
      sq += std::norm(f.samples[i]);
    }
    if (box.contains(x)) num += std::norm(s);
    double w = box_weight(box, x);
    den += sq * w * w;
  }
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw std::runtime_error("local_orthogonality_defect: zero denominator with nonzero numerator");
  }
  return num / den;
}

}  // namespace smallcap
