#include "smallcap/caps.hpp"

#include <cmath>
#include <random>

namespace smallcap {

std::string curve_name(Curve c) { return c == Curve::parabola ? "parabola" : "cone"; }

bool is_dyadic(double R) {
  if (!(R >= 2.0) || R != std::floor(R)) return false;
  auto n = static_cast<uint64_t>(R);
  return (n & (n - 1)) == 0;
}

namespace {

void require_scale(double R, double lo_exp, double hi_exp, double e, const char* what) {
  if (!is_dyadic(R) || R < 4.0) throw std::invalid_argument(std::string(what) + ": R must be dyadic and >= 4");
  if (!(e >= lo_exp && e <= hi_exp)) throw std::invalid_argument(std::string(what) + ": exponent out of range");
}

constexpr double kThickness = 1.4;   // thickness half-length in units of the neighborhood scale
constexpr double kAngMargin = 1.25;  // angular slack absorbing the neighborhood offset

OrientedBox parabola_cap_box(double xi0, double width, double R) {
  double sec = std::sqrt(1.0 + 4.0 * xi0 * xi0);
  Vec tangent(1.0 / sec, 2.0 * xi0 / sec);
  Vec normal(-2.0 * xi0 / sec, 1.0 / sec);
  // tangential extent of the slab over the interval, plus the second-order
  // terms 2 xi0 (delta^2 + v) / sec with |v| <= 1/R
  double margin = 1.3 * (2.0 * std::fabs(xi0) / sec) * (1.0 / R + width * width / 4.0) + 1e-14;
  double half_t = (width / 2.0) * sec + margin;
  double half_n = kThickness / R;
  std::array<Vec, 3> axes{tangent, normal, Vec()};
  std::array<double, 3> half{half_t, half_n, 0.0};
  return make_box(Vec(xi0, xi0 * xi0), std::span<const Vec>(axes.data(), 2),
                  std::span<const double>(half.data(), 2));
}

// Shared cone-arc construction: n equal arcs, thickness = neighborhood scale.
CapFamily cone_arc_family(double R, double exponent, bool is_sector, size_t n, double thickness) {
  CapFamily fam;
  fam.curve = Curve::cone;
  fam.R = R;
  fam.exponent = exponent;
  fam.is_sector = is_sector;
  double w = 2.0 * M_PI / static_cast<double>(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (size_t j = 0; j < n; ++j) {
    double phi = (static_cast<double>(j) + 0.5) * w;
    Vec gen(std::cos(phi) * inv_sqrt2, std::sin(phi) * inv_sqrt2, inv_sqrt2);
    Vec ang(-std::sin(phi), std::cos(phi), 0.0);
    Vec nor(std::cos(phi) * inv_sqrt2, std::sin(phi) * inv_sqrt2, -inv_sqrt2);
    Vec center(0.75 * std::cos(phi), 0.75 * std::sin(phi), 0.75);
    std::array<Vec, 3> axes{gen, ang, nor};
    // normal extent: neighborhood offset plus the arc sagitta w^2/(8 sqrt2)
    double half_nor = 1.2 * thickness + 1.1 * w * w / (8.0 * std::sqrt(2.0));
    std::array<double, 3> half{0.5, std::sin(w / 2.0) + kAngMargin * thickness, half_nor};
    fam.caps.push_back(make_box(center, axes, half));
    fam.anchors.push_back(phi);
  }
  return fam;
}

}  // namespace

CapFamily parabola_caps(double R, double alpha) {
  require_scale(R, 0.5, 1.0, alpha, "parabola_caps");
  auto n = static_cast<size_t>(std::ceil(2.0 * std::pow(R, alpha) - 1e-9));
  double width = 2.0 / static_cast<double>(n);
  CapFamily fam;
  fam.curve = Curve::parabola;
  fam.R = R;
  fam.exponent = alpha;
  for (size_t j = 0; j < n; ++j) {
    double xi0 = -1.0 + (static_cast<double>(j) + 0.5) * width;
    fam.caps.push_back(parabola_cap_box(xi0, width, R));
    fam.anchors.push_back(xi0);
  }
  return fam;
}

CapFamily cone_caps(double R, double beta) {
  require_scale(R, 0.5, 1.0, beta, "cone_caps");
  auto n = static_cast<size_t>(std::ceil(2.0 * std::pow(R, beta) - 1e-9));
  return cone_arc_family(R, beta, false, n, 1.0 / R);
}

CapFamily sector_planks(double R, double s) {
  if (!is_dyadic(R) || R < 4.0) throw std::invalid_argument("sector_planks: R must be dyadic and >= 4");
  if (!(s >= 1.0 / std::sqrt(R) - 1e-12 && s <= 1.0))
    throw std::invalid_argument("sector_planks: s out of [R^-1/2, 1]");
  auto n = static_cast<size_t>(std::ceil(2.0 / s - 1e-9));
  if (s >= 1.0 - 1e-12) n = 1;
  if (n == 1) {
    // single plank: the whole ring collapses to one box around N_1(C)
    CapFamily fam;
    fam.curve = Curve::cone;
    fam.R = R;
    fam.exponent = s;
    fam.is_sector = true;
    fam.caps.push_back(axis_box(Vec(0.0, 0.0, 0.75), Vec(2.5, 2.5, 2.5)));
    fam.anchors.push_back(M_PI);
    return fam;
  }
  return cone_arc_family(R, s, true, n, s * s);
}

OrientedBox envelope_box(const OrientedBox& tau, double s, double R) {
  return dual_box(tau).dilated(R * s * s);
}

OrientedBox envelope_box(const CapFamily& sectors, size_t tau_index, double R) {
  if (tau_index >= sectors.size()) throw std::invalid_argument("envelope_box: bad tau index");
  if (!sectors.is_sector) throw std::invalid_argument("envelope_box: family is not a sector family");
  return envelope_box(sectors.caps[tau_index], sectors.exponent, R);
}

OrientedBox u_theta_box(const OrientedBox& theta, double s, double R) {
  OrientedBox u = theta;
  u.center = zero_vec(theta.dim);
  u.half = {R * s * s / 2.0, R * s / 2.0, R / 2.0};
  return u;
}

OrientedBox nu_box(const OrientedBox& theta, double beta, double R) {
  if (!(beta >= 0.5)) throw std::invalid_argument("nu_box: beta must be >= 1/2");
  OrientedBox nu = theta;
  nu.center = zero_vec(3);
  nu.half = {std::pow(R, 0.5 - beta) / 2.0, std::pow(R, -beta) / 2.0, 0.5 / R};
  return nu;
}

OrientedBox v_box(const OrientedBox& tau, double s, const OrientedBox& theta, double beta, double R) {
  // theta must sit inside tau's sector: frames differ by at most ~s
  if (std::fabs(tau.axes[0].dot(theta.axes[0])) < std::cos(1.2 * s + 1e-6))
    throw std::invalid_argument("v_box: theta is not contained in tau's sector");
  OrientedBox u = envelope_box(tau, s, R);
  OrientedBox nustar = dual_box(nu_box(theta, beta, R));
  return minkowski_sum_aligned(u, nustar, std::max(0.2, 2.0 * s));
}

CapFamily pi_planks(const OrientedBox& theta, double theta_arc_width, double s, double R) {
  // nominal subdivision count R^{1/2} s: theta width over the pi width R^-1 s^-1
  (void)theta_arc_width;
  double count = std::sqrt(R) * s;
  if (count < 0.5)
    throw std::invalid_argument("pi_planks: plank width exceeds the theta width");
  auto n = static_cast<size_t>(std::llround(count));
  if (n < 1) n = 1;
  CapFamily fam;
  fam.curve = Curve::cone;
  fam.R = R;
  fam.exponent = s;
  fam.is_sector = true;
  for (size_t k = 0; k < n; ++k) {
    OrientedBox p = theta;
    double off = (-1.0 + (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n)) * theta.half[1];
    p.center = theta.center + theta.axes[1] * off;
    p.half[1] = theta.half[1] / static_cast<double>(n);
    fam.caps.push_back(p);
    fam.anchors.push_back(off);
  }
  return fam;
}

CapFamily pi_planks_for(const CapFamily& thetas, size_t theta_index, double s, double R) {
  if (theta_index >= thetas.size()) throw std::invalid_argument("pi_planks_for: bad theta index");
  double w = 2.0 * M_PI / static_cast<double>(thetas.size());
  return pi_planks(thetas.caps[theta_index], w, s, R);
}

std::vector<size_t> assign_by_anchor(const CapFamily& fine, const CapFamily& coarse) {
  std::vector<size_t> out;
  out.reserve(fine.size());
  for (double a : fine.anchors) {
    size_t best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < coarse.size(); ++j) {
      double d = std::fabs(a - coarse.anchors[j]);
      if (fine.curve == Curve::cone) d = std::min(d, 2.0 * M_PI - d);  // angular distance
      if (d < bestd - 1e-15) {
        bestd = d;
        best = j;
      }
    }
    out.push_back(best);
  }
  return out;
}

Vec AffineMap::apply(const Vec& x) const {
  Vec r = translation;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.v[i] += linear[i][j] * x.v[j];
  return r;
}

double AffineMap::det() const {
  if (dim == 2) return linear[0][0] * linear[1][1] - linear[0][1] * linear[1][0];
  return linear[0][0] * (linear[1][1] * linear[2][2] - linear[1][2] * linear[2][1]) -
         linear[0][1] * (linear[1][0] * linear[2][2] - linear[1][2] * linear[2][0]) +
         linear[0][2] * (linear[1][0] * linear[2][1] - linear[1][1] * linear[2][0]);
}

AffineMap AffineMap::inverse() const {
  double d = det();
  if (std::fabs(d) < 1e-14) throw std::invalid_argument("AffineMap: linear part is singular");
  AffineMap inv;
  inv.dim = dim;
  if (dim == 2) {
    inv.linear[0][0] = linear[1][1] / d;
    inv.linear[0][1] = -linear[0][1] / d;
    inv.linear[1][0] = -linear[1][0] / d;
    inv.linear[1][1] = linear[0][0] / d;
  } else {
    throw std::invalid_argument("AffineMap::inverse: only 2D is needed/implemented");
  }
  Vec t = zero_vec(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) t.v[i] -= inv.linear[i][j] * translation.v[j];
  inv.translation = t;
  return inv;
}

AffineMap AffineMap::physical_action() const {
  AffineMap inv = inverse();
  AffineMap phys;
  phys.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) phys.linear[i][j] = inv.linear[j][i];
  phys.translation = zero_vec(dim);
  return phys;
}

AffineMap parabolic_rescaling(double a, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("parabolic_rescaling: degenerate delta");
  if (!(a >= -1.0 && a + delta <= 1.0 + 1e-12))
    throw std::invalid_argument("parabolic_rescaling: [a, a+delta] must sit inside [-1,1]");
  AffineMap m;
  m.dim = 2;
  m.linear[0][0] = 1.0 / delta;
  m.linear[0][1] = 0.0;
  m.linear[1][0] = -2.0 * a / (delta * delta);
  m.linear[1][1] = 1.0 / (delta * delta);
  m.translation = Vec(-a / delta, a * a / (delta * delta));
  return m;
}

std::vector<Vec> sample_curve_neighborhood(Curve curve, double R, size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  if (curve == Curve::parabola) {
    // (xi, xi^2 + v), |v| <= 1/R: vertical offsets stay inside the true
    // neighborhood since the vertical distance dominates the true distance
    for (size_t i = 0; i < count; ++i) {
      double xi = -1.0 + 2.0 * u01(rng);
      double v = (2.0 * u01(rng) - 1.0) / R;
      out.emplace_back(xi, xi * xi + v);
    }
  } else {
    // cone point (t cos, t sin, t) plus a ball offset of radius 1/R
    std::normal_distribution<double> g;
    for (size_t i = 0; i < count; ++i) {
      double phi = 2.0 * M_PI * u01(rng);
      double t = 0.5 + 0.5 * u01(rng);
      Vec p(t * std::cos(phi), t * std::sin(phi), t);
      Vec e(g(rng), g(rng), g(rng));
      double n = e.norm();
      if (n > 1e-12) {
        double r = std::cbrt(u01(rng)) / R;
        p = p + e * (r / n);
      }
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace smallcap
