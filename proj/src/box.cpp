#include "smallcap/box.hpp"

#include <algorithm>
#include <numeric>

namespace smallcap {

void validate_box(const OrientedBox& b) {
  if (b.dim != 2 && b.dim != 3) throw std::invalid_argument("box dimension must be 2 or 3");
  for (int i = 0; i < b.dim; ++i) {
    if (!(b.half[i] > 0.0)) throw std::invalid_argument("half lengths must be strictly positive");
    for (int j = 0; j <= i; ++j) {
      double want = (i == j) ? 1.0 : 0.0;
      if (std::fabs(b.axes[i].dot(b.axes[j]) - want) > 1e-12)
        throw std::invalid_argument("box axes are not orthonormal to 1e-12");
    }
  }
}

OrientedBox make_box(const Vec& center, std::span<const Vec> axes, std::span<const double> half_lengths) {
  OrientedBox b;
  b.dim = center.dim;
  b.center = center;
  for (size_t i = 0; i < axes.size(); ++i) b.axes[i] = axes[i];
  for (size_t i = 0; i < half_lengths.size(); ++i) b.half[i] = half_lengths[i];
  validate_box(b);
  return b;
}

OrientedBox axis_box(const Vec& center, const Vec& half_lengths) {
  OrientedBox b;
  b.dim = center.dim;
  b.center = center;
  for (int i = 0; i < b.dim; ++i) {
    Vec a = zero_vec(b.dim);
    a.v[i] = 1.0;
    b.axes[i] = a;
    b.half[i] = half_lengths[i];
  }
  validate_box(b);
  return b;
}

OrientedBox dual_box(const OrientedBox& b) {
  OrientedBox d = b;
  d.center = zero_vec(b.dim);
  for (int i = 0; i < b.dim; ++i) d.half[i] = 1.0 / (4.0 * b.half[i]);
  return d;
}

bool essentially_contained(const OrientedBox& a, const OrientedBox& b, double C) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  for (const Vec& v : a.dilated(1.0 / C).vertices())
    if (!b.contains(v)) return false;
  return true;
}

bool comparable(const OrientedBox& a, const OrientedBox& b, double C) {
  return essentially_contained(a, b, C) && essentially_contained(b, a, C);
}

namespace {

// Axis order by descending half length; ties by lexicographic axis comparison.
std::array<int, 3> rank_axes(const OrientedBox& b) {
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.begin() + b.dim, [&](int i, int j) {
    if (b.half[i] != b.half[j]) return b.half[i] > b.half[j];
    return std::lexicographical_compare(b.axes[j].v.begin(), b.axes[j].v.end(),
                                        b.axes[i].v.begin(), b.axes[i].v.end());
  });
  return idx;
}

}  // namespace

OrientedBox minkowski_sum_aligned(const OrientedBox& a, const OrientedBox& b, double angle_tol) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  auto ra = rank_axes(a);
  auto rb = rank_axes(b);
  double cos_tol = std::cos(angle_tol);
  OrientedBox out = a;
  out.center = a.center + b.center;
  for (int k = 0; k < a.dim; ++k) {
    int ia = ra[k], ib = rb[k];
    // axes of a box are direction-insensitive
    if (std::fabs(a.axes[ia].dot(b.axes[ib])) < cos_tol)
      throw std::invalid_argument("minkowski_sum_aligned: axes misaligned beyond tolerance");
    out.half[ia] = std::max(a.half[ia], b.half[ib]);
  }
  return out;
}

Tiling tile_region(const OrientedBox& prototype, double radius, size_t max_tiles) {
  if (!(radius > 0.0)) throw std::invalid_argument("tile_region: radius must be positive");
  validate_box(prototype);
  const int dim = prototype.dim;

  // Enumerate candidate lattice offsets, then keep tiles whose closest point
  // to the origin is within the ball.
  std::array<int64_t, 3> kmax{0, 0, 0};
  double count_estimate = 1.0;
  for (int i = 0; i < dim; ++i) {
    double edge = 2.0 * prototype.half[i];
    kmax[i] = static_cast<int64_t>(std::floor((radius + prototype.half[i] + std::fabs(prototype.center.dot(prototype.axes[i]))) / edge)) + 1;
    count_estimate *= static_cast<double>(2 * kmax[i] + 1);
  }
  if (count_estimate > static_cast<double>(max_tiles))
    throw std::runtime_error("tile_region: tile count exceeds configured cap");

  Tiling t;
  t.prototype = prototype;
  t.region_radius = radius;
  std::array<int64_t, 3> k{0, 0, 0};
  for (k[0] = -kmax[0]; k[0] <= kmax[0]; ++k[0])
    for (k[1] = -kmax[1]; k[1] <= kmax[1]; ++k[1])
      for (k[2] = -kmax[2]; k[2] <= kmax[2]; ++k[2]) {
        if (dim == 2 && k[2] != 0) continue;
        double dist2 = 0.0;
        for (int i = 0; i < dim; ++i) {
          double c = prototype.center.dot(prototype.axes[i]) + 2.0 * prototype.half[i] * static_cast<double>(k[i]);
          double excess = std::fabs(c) - prototype.half[i];
          if (excess > 0.0) dist2 += excess * excess;
        }
        if (dist2 <= radius * radius) {
          t.offsets.push_back(k);
          if (t.offsets.size() > max_tiles)
            throw std::runtime_error("tile_region: tile count exceeds configured cap");
        }
      }
  return t;
}

OverlapStats overlap_multiplicity(std::span<const OrientedBox> boxes, std::span<const Vec> samples) {
  if (boxes.empty()) throw std::invalid_argument("overlap_multiplicity: empty box list");
  if (samples.empty()) throw std::invalid_argument("overlap_multiplicity: empty sample list");
  OverlapStats st;
  for (const Vec& p : samples) {
    int c = 0;
    for (const OrientedBox& b : boxes)
      if (b.contains(p)) ++c;
    st.max = std::max(st.max, c);
    ++st.histogram[c];
  }
  return st;
}

std::vector<Vec> lattice_in_ball(int dim, double radius, double spacing) {
  std::vector<Vec> out;
  int64_t kmax = static_cast<int64_t>(std::floor(radius / spacing));
  double r2 = radius * radius;
  if (dim == 2) {
    for (int64_t i = -kmax; i <= kmax; ++i)
      for (int64_t j = -kmax; j <= kmax; ++j) {
        Vec p(i * spacing, j * spacing);
        if (p.dot(p) <= r2) out.push_back(p);
      }
  } else {
    for (int64_t i = -kmax; i <= kmax; ++i)
      for (int64_t j = -kmax; j <= kmax; ++j)
        for (int64_t k = -kmax; k <= kmax; ++k) {
          Vec p(i * spacing, j * spacing, k * spacing);
          if (p.dot(p) <= r2) out.push_back(p);
        }
  }
  return out;
}

std::vector<Vec> lattice_in_annulus(int dim, double r_inner, double r_outer, double spacing) {
  std::vector<Vec> out;
  for (const Vec& p : lattice_in_ball(dim, r_outer, spacing))
    if (p.dot(p) >= r_inner * r_inner) out.push_back(p);
  return out;
}

std::vector<Vec> lattice_in_box(const OrientedBox& b, double spacing) {
  std::vector<Vec> out;
  std::array<int64_t, 3> kmax{0, 0, 0};
  for (int i = 0; i < b.dim; ++i) kmax[i] = static_cast<int64_t>(std::floor(b.half[i] / spacing));
  std::array<int64_t, 3> k{0, 0, 0};
  for (k[0] = -kmax[0]; k[0] <= kmax[0]; ++k[0])
    for (k[1] = -kmax[1]; k[1] <= kmax[1]; ++k[1])
      for (k[2] = -kmax[2]; k[2] <= kmax[2]; ++k[2]) {
        if (b.dim == 2 && k[2] != 0) continue;
        Vec t = zero_vec(b.dim);
        for (int i = 0; i < b.dim; ++i) t.v[i] = k[i] * spacing;
        out.push_back(b.from_frame(t));
      }
  return out;
}

}  // namespace smallcap
