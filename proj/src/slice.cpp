#include "smallcap/slice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smallcap {

std::vector<SlicePlank> slice_family(double R, double beta, double r) {
  if (!(R >= 4.0) || !(beta >= 0.5 && beta <= 1.0)) throw std::invalid_argument("slice_family: bad parameters");
  if (!(r >= 0.0 && r <= R)) throw std::invalid_argument("slice_family: r out of [0, R]");
  auto n = static_cast<size_t>(std::ceil(2.0 * std::pow(R, beta) - 1e-9));
  double w = 2.0 * M_PI / static_cast<double>(n);
  std::vector<SlicePlank> out;
  out.reserve(n);
  for (size_t j = 0; j < n; ++j) {
    double psi = (static_cast<double>(j) + 0.5) * w;
    SlicePlank p;
    p.center = Vec(r * std::cos(psi), r * std::sin(psi));
    p.tangent = Vec(-std::sin(psi), std::cos(psi));
    p.half_long = std::pow(R, beta) / 2.0;
    p.half_short = 0.5;
    p.slice_radius = r;
    p.R = R;
    p.beta = beta;
    out.push_back(p);
  }
  return out;
}

int brute_overlap(const Vec& p, std::span<const SlicePlank> planks) {
  int c = 0;
  for (const SlicePlank& pl : planks)
    if (pl.contains(p)) ++c;
  return c;
}

OverlapPrediction predicted_overlap(double d, double r, double R, double beta) {
  OverlapPrediction out;
  double rb = std::pow(R, beta);
  if (r < 10.0) {
    // degenerate bush: every plank passes near the origin
    out.regime = Regime::bush;
    if (d <= 10.0) {
      out.value = 2.0 * rb;
    } else {
      out.value = 0.0;
      out.in_range = false;
      out.regime = Regime::out_of_range;
    }
    return out;
  }
  double inner_cap = (r >= rb) ? std::min(r, rb * rb / r) : r;
  if (d <= 10.0) {
    out.regime = Regime::core;
    out.value = rb / std::sqrt(r);
  } else if (d <= inner_cap) {
    out.regime = Regime::inner;
    out.value = rb / std::sqrt(r * d);
  } else if (r <= rb && d <= rb) {
    out.regime = Regime::outer;
    out.value = rb / d;
  } else {
    out.regime = Regime::out_of_range;
    out.value = 0.0;
    out.in_range = false;
  }
  return out;
}

namespace {

struct Event {
  int64_t x;
  int delta;
};

// x-interval of one strip |a (x - cx) + b| <= h on a fixed row; returns false
// when the row misses the strip entirely.
bool strip_interval(double a, double b, double h, double cx, double& lo, double& hi) {
  if (std::fabs(a) < 1e-12) {
    if (std::fabs(b) > h) return false;
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
    return true;
  }
  double u = (-h - b) / a, v = (h - b) / a;
  lo = cx + std::min(u, v);
  hi = cx + std::max(u, v);
  return true;
}

double pow_half_p(int m, double p) { return std::pow(static_cast<double>(m), p / 2.0); }

}  // namespace

double slice_integral(double r, double p, double R, double beta, SliceMethod method) {
  if (!(p >= 2.0)) throw std::invalid_argument("slice_integral: p must be >= 2");
  double rb = std::pow(R, beta);
  if (method == SliceMethod::analytic) {
    double x = std::pow(rb, p / 2.0);  // R^{beta p/2}
    if (r <= 10.0) return rb * rb + x;
    if (r <= rb) return std::pow(r, 1.0 - p / 4.0) * x + std::pow(r, 2.0 - p / 2.0) * x + rb * rb;
    return std::pow(r, 1.0 - p / 4.0) * x + rb * rb;
  }

  // exact unit-lattice sum of (sum 1_{gamma*_r})^{p/2} by per-row span sweep
  auto planks = slice_family(R, beta, r);
  double extent = r + rb / 2.0 + 2.0;
  if (extent > 3.0e4) throw std::runtime_error("slice_integral: brute support exceeds the configured cap");
  auto ymin = static_cast<int64_t>(-std::ceil(extent));
  auto ymax = static_cast<int64_t>(std::ceil(extent));
  std::vector<std::vector<Event>> rows(static_cast<size_t>(ymax - ymin + 1));

  for (const SlicePlank& pl : planks) {
    double ty = pl.tangent.v[1], tx = pl.tangent.v[0];
    double yext = pl.half_long * std::fabs(ty) + pl.half_short * std::fabs(tx);
    auto ylo = static_cast<int64_t>(std::ceil(pl.center.v[1] - yext - 1e-9));
    auto yhi = static_cast<int64_t>(std::floor(pl.center.v[1] + yext + 1e-9));
    for (int64_t y = ylo; y <= yhi; ++y) {
      double u = static_cast<double>(y) - pl.center.v[1];
      double alo, ahi, blo, bhi;
      // tangential strip: | tx (x-cx) + ty u | <= half_long
      if (!strip_interval(tx, ty * u, pl.half_long, pl.center.v[0], alo, ahi)) continue;
      // normal strip: | -ty (x-cx) + tx u | <= half_short
      if (!strip_interval(-ty, tx * u, pl.half_short, pl.center.v[0], blo, bhi)) continue;
      double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (lo > hi) continue;
      auto xlo = static_cast<int64_t>(std::ceil(lo - 1e-9));
      auto xhi = static_cast<int64_t>(std::floor(hi + 1e-9));
      if (xlo > xhi) continue;
      rows[static_cast<size_t>(y - ymin)].push_back({xlo, +1});
      rows[static_cast<size_t>(y - ymin)].push_back({xhi + 1, -1});
    }
  }

  double total = 0.0;
  for (auto& row : rows) {
    if (row.empty()) continue;
    std::sort(row.begin(), row.end(), [](const Event& a, const Event& b) { return a.x < b.x; });
    int m = 0;
    int64_t xprev = row.front().x;
    for (const Event& e : row) {
      if (e.x > xprev && m > 0) total += static_cast<double>(e.x - xprev) * pow_half_p(m, p);
      if (e.x > xprev) xprev = e.x;
      m += e.delta;
    }
  }
  return total;
}

double total_integral(double p, double R, double beta, SliceMethod method) {
  if (!(p >= 2.0)) throw std::invalid_argument("total_integral: p must be >= 2");
  if (method == SliceMethod::analytic) {
    double b2 = std::pow(R, p * beta / 2.0);
    return b2 + std::pow(R, 2.0 - p / 4.0) * b2 + std::pow(R, 1.0 + 2.0 * beta);
  }
  double total = 0.0;
  for (double r = 1.0; r <= R; r *= 2.0) total += r * slice_integral(r, p, R, beta, SliceMethod::brute);
  return total;
}

}  // namespace smallcap
