#pragma once

#include "smallcap/box.hpp"

namespace smallcap {

/// 1 x R^beta rectangle in the plane {x3 = r}: center on the circle S_r, long
/// axis tangent to it.
struct SlicePlank {
  Vec center;       // 2D
  Vec tangent;      // unit, long direction
  double half_long = 0.0;   // R^beta / 2
  double half_short = 0.5;  // plank width 1
  double slice_radius = 0.0;
  double R = 0.0, beta = 0.0;

  bool contains(const Vec& p) const {
    double dx = p.v[0] - center.v[0], dy = p.v[1] - center.v[1];
    double t = dx * tangent.v[0] + dy * tangent.v[1];
    double s = -dx * tangent.v[1] + dy * tangent.v[0];
    return std::fabs(t) <= half_long && std::fabs(s) <= half_short;
  }
};

/// One plank per gamma: centers equally spaced on S_r.
std::vector<SlicePlank> slice_family(double R, double beta, double r);

/// Exact number of planks containing P (closed rectangles).
int brute_overlap(const Vec& p, std::span<const SlicePlank> planks);

enum class Regime { bush, core, inner, outer, out_of_range };

struct OverlapPrediction {
  double value = 0.0;
  bool in_range = true;
  Regime regime = Regime::core;
};

/// Piecewise overlap count of the slice planks at distance d from S_r:
///   d <= 10            ->  r^{-1/2} R^beta          (core; bush count when r <= 10)
///   10 <= d <= min(r,cap) -> R^beta (r d)^{-1/2}    (inner)
///   r <= d <= R^beta   ->  R^beta / d               (outer, only when r <= R^beta)
/// where cap = r^{-1} R^{2 beta} bounds the inner regime when r >= R^beta.
OverlapPrediction predicted_overlap(double d, double r, double R, double beta);

struct RegimeReport {
  double d = 0.0;
  Regime regime = Regime::core;
  double predicted = 0.0;
  int measured = 0;
};

enum class SliceMethod { brute, analytic };

/// Slice integral  int_{x3=r} (sum 1_{gamma*_r})^{p/2}.
/// analytic: the three-range piecewise formula; brute: exact unit-lattice sum
/// by a per-row span sweep (deterministic, no per-cell iteration).
double slice_integral(double r, double p, double R, double beta, SliceMethod method);

/// Total integral over |r| <= R: analytic three-term formula, or the dyadic-r
/// sum  sum_r r * slice_integral(r, brute).
double total_integral(double p, double R, double beta, SliceMethod method);

}  // namespace smallcap
