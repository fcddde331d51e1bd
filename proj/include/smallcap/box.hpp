#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace smallcap {

/// Point/direction in R^2 or R^3. Unused trailing components stay zero.
struct Vec {
  int dim = 0;
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec() = default;
  Vec(double x, double y) : dim(2), v{x, y, 0.0} {}
  Vec(double x, double y, double z) : dim(3), v{x, y, z} {}

  double& operator[](int i) { return v[static_cast<size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<size_t>(i)]; }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim; ++i) r.v[i] += o.v[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < dim; ++i) r.v[i] -= o.v[i];
    return r;
  }
  Vec operator*(double c) const {
    Vec r = *this;
    for (int i = 0; i < dim; ++i) r.v[i] *= c;
    return r;
  }
  double dot(const Vec& o) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * o.v[i];
    return s;
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec normalized() const {
    double n = norm();
    return *this * (1.0 / n);
  }
};

inline Vec zero_vec(int dim) { return dim == 2 ? Vec(0.0, 0.0) : Vec(0.0, 0.0, 0.0); }

/// Rectangle/box with an arbitrary orthonormal axis frame.
/// Membership is exact: |<x - center, axis_i>| <= half[i] for every axis.
struct OrientedBox {
  int dim = 0;
  Vec center;
  std::array<Vec, 3> axes;
  std::array<double, 3> half{0.0, 0.0, 0.0};

  bool contains(const Vec& x) const {
    for (int i = 0; i < dim; ++i) {
      double t = 0.0;
      for (int j = 0; j < dim; ++j) t += (x.v[j] - center.v[j]) * axes[i].v[j];
      if (std::fabs(t) > half[i]) return false;
    }
    return true;
  }

  /// Coordinates of x in the box frame (projections onto the axes).
  Vec to_frame(const Vec& x) const {
    Vec r = zero_vec(dim);
    for (int i = 0; i < dim; ++i) r.v[i] = (x - center).dot(axes[i]);
    return r;
  }

  Vec from_frame(const Vec& t) const {
    Vec r = center;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r.v[j] += t.v[i] * axes[i].v[j];
    return r;
  }

  double edge_length(int i) const { return 2.0 * half[i]; }

  double volume() const {
    double s = 1.0;
    for (int i = 0; i < dim; ++i) s *= 2.0 * half[i];
    return s;
  }

  /// Dilation about the box's own center.
  OrientedBox dilated(double factor) const {
    OrientedBox b = *this;
    for (int i = 0; i < dim; ++i) b.half[i] *= factor;
    return b;
  }

  OrientedBox translated(const Vec& t) const {
    OrientedBox b = *this;
    b.center = center + t;
    return b;
  }

  std::vector<Vec> vertices() const {
    std::vector<Vec> out;
    int corners = 1 << dim;
    out.reserve(static_cast<size_t>(corners));
    for (int m = 0; m < corners; ++m) {
      Vec p = center;
      for (int i = 0; i < dim; ++i) {
        double s = (m >> i) & 1 ? half[i] : -half[i];
        for (int j = 0; j < dim; ++j) p.v[j] += s * axes[i].v[j];
      }
      out.push_back(p);
    }
    return out;
  }

  /// Outer radius: distance from the center to a corner.
  double circumradius() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += half[i] * half[i];
    return std::sqrt(s);
  }
};

/// Throws std::invalid_argument unless axes are orthonormal to 1e-12 and all
/// half lengths are strictly positive.
void validate_box(const OrientedBox& b);

OrientedBox make_box(const Vec& center, std::span<const Vec> axes, std::span<const double> half_lengths);
OrientedBox axis_box(const Vec& center, const Vec& half_lengths);

/// Origin-centered box on the same axes with every edge length replaced by its
/// reciprocal (half[i] -> 1/(4 half[i])).
OrientedBox dual_box(const OrientedBox& b);

/// (1/C)-shrink of a (about a's center) lies inside b, vertex-checked.
bool essentially_contained(const OrientedBox& a, const OrientedBox& b, double C);
bool comparable(const OrientedBox& a, const OrientedBox& b, double C = 100.0);

/// Box on a's axes with componentwise-max half lengths, centers added.
/// Axes are paired by descending half length (ties broken lexicographically);
/// throws if a matched pair differs by more than angle_tol radians.
OrientedBox minkowski_sum_aligned(const OrientedBox& a, const OrientedBox& b, double angle_tol = 0.1);

struct Tiling {
  OrientedBox prototype;
  std::vector<std::array<int64_t, 3>> offsets;
  double region_radius = 0.0;

  size_t size() const { return offsets.size(); }
  OrientedBox tile(size_t i) const {
    Vec t = zero_vec(prototype.dim);
    for (int k = 0; k < prototype.dim; ++k) {
      double shift = 2.0 * prototype.half[k] * static_cast<double>(offsets[i][static_cast<size_t>(k)]);
      for (int j = 0; j < prototype.dim; ++j) t.v[j] += shift * prototype.axes[k].v[j];
    }
    return prototype.translated(t);
  }
};

/// Translates of the prototype along its own axes at full-edge spacing,
/// keeping exactly those that meet the ball of the given radius about the
/// origin. Throws when the tile count would exceed max_tiles.
Tiling tile_region(const OrientedBox& prototype, double radius, size_t max_tiles = size_t(1) << 24);

struct OverlapStats {
  int max = 0;
  std::map<int, size_t> histogram;  // membership count -> number of samples
};

OverlapStats overlap_multiplicity(std::span<const OrientedBox> boxes, std::span<const Vec> samples);

// Sample-point generators for targeted overlap measurements.
std::vector<Vec> lattice_in_ball(int dim, double radius, double spacing);
std::vector<Vec> lattice_in_annulus(int dim, double r_inner, double r_outer, double spacing);
std::vector<Vec> lattice_in_box(const OrientedBox& b, double spacing);

}  // namespace smallcap
