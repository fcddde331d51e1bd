#pragma once

// Shared helpers for the test binaries.

#include <vector>

#include "smallcap/box.hpp"

namespace smallcap::testutil {

/// Deterministic per-axis grid inside a (possibly very anisotropic) box.
inline std::vector<Vec> grid_in_box(const OrientedBox& b, int nx, int ny, int nz = 1) {
  std::vector<Vec> out;
  std::array<int, 3> n{nx, ny, b.dim == 3 ? nz : 1};
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k) {
        Vec t = zero_vec(b.dim);
        std::array<int, 3> idx{i, j, k};
        for (int a = 0; a < b.dim; ++a)
          t.v[a] = b.half[a] * (-1.0 + (2.0 * idx[a] + 1.0) / n[a]);
        out.push_back(b.from_frame(t));
      }
  return out;
}

/// Frank-Wolfe point-in-convex-hull test: returns the distance from v to
/// hull(points) up to the iteration tolerance.
inline double dist_to_hull(const Vec& v, const std::vector<Vec>& points, int iters = 4000) {
  Vec x = points.front();
  for (int it = 0; it < iters; ++it) {
    Vec g = (x - v) * 2.0;
    size_t best = 0;
    double bestdot = g.dot(points[0]);
    for (size_t i = 1; i < points.size(); ++i) {
      double d = g.dot(points[i]);
      if (d < bestdot) {
        bestdot = d;
        best = i;
      }
    }
    Vec dir = points[best] - x;
    double denom = dir.dot(dir);
    if (denom < 1e-30) break;
    double step = (v - x).dot(dir) / denom;
    if (step <= 0.0) break;
    if (step > 1.0) step = 1.0;
    x = x + dir * step;
  }
  return (x - v).norm();
}

}  // namespace smallcap::testutil
