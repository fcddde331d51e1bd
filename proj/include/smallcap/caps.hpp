#pragma once

#include <string>

#include "smallcap/box.hpp"

namespace smallcap {

enum class Curve { parabola, cone };

std::string curve_name(Curve c);

/// Ordered partition of a curve neighborhood into oriented boxes.
/// `exponent` is alpha/beta for the small-cap families and the plank width s
/// for sector families (is_sector distinguishes the two readings).
struct CapFamily {
  Curve curve = Curve::parabola;
  double R = 0.0;
  double exponent = 0.0;
  bool is_sector = false;
  std::vector<OrientedBox> caps;
  std::vector<double> anchors;  // interval midpoint xi0 (parabola) / arc midpoint angle (cone)

  size_t size() const { return caps.size(); }
};

bool is_dyadic(double R);

/// Caps of the unit parabola {(xi, xi^2) : |xi| <= 1}: one tangent box per
/// length-R^-alpha subinterval of [-1,1], thick enough to hold the
/// R^-1-neighborhood over its interval.
CapFamily parabola_caps(double R, double alpha);

/// Caps of the truncated cone (xi3 in [1/2,1]): one box per R^-beta arc of the
/// unit circle, axes (generator, angular tangent, cone normal).
CapFamily cone_caps(double R, double beta);

/// Sector planks S_s: 1 x s x s^2 planks of the s^2-neighborhood.
/// sector_planks(R, R^-1/2) coincides with cone_caps(R, 1/2).
CapFamily sector_planks(double R, double s);

/// Physical-space envelope of a sector plank: the dual of tau dilated by Rs^2,
/// so it has dimensions ~ Rs^2 x Rs x R with the stated axis pairing and the
/// s = R^-1/2 case is exactly the dual plank.
OrientedBox envelope_box(const OrientedBox& tau, double s, double R);
OrientedBox envelope_box(const CapFamily& sectors, size_t tau_index, double R);

/// Idealized Rs^2 x Rs x R box carried by theta's own axes (the comparability
/// partner of envelope_box).
OrientedBox u_theta_box(const OrientedBox& theta, double s, double R);

/// Frequency box nu_theta of size R^(1/2-beta) x R^-beta x R^-1 on theta's axes.
OrientedBox nu_box(const OrientedBox& theta, double beta, double R);

/// V_theta = U_tau + nu_theta^* via the aligned Minkowski sum.
OrientedBox v_box(const OrientedBox& tau, double s, const OrientedBox& theta, double beta, double R);

/// Subdivision of theta across its angular edge into planks of width
/// R^-1 s^-1. Throws when that width exceeds theta's own width.
CapFamily pi_planks(const OrientedBox& theta, double theta_arc_width, double s, double R);
CapFamily pi_planks_for(const CapFamily& thetas, size_t theta_index, double s, double R);

/// gamma -> plank assignment by angular/tangential midpoint, ties to the
/// lower index.
std::vector<size_t> assign_by_anchor(const CapFamily& fine, const CapFamily& coarse);

struct AffineMap {
  int dim = 2;
  std::array<std::array<double, 3>, 3> linear{};  // row-major
  Vec translation;

  Vec apply(const Vec& x) const;
  double det() const;
  AffineMap inverse() const;
  /// Inverse-transpose of the linear part: the physical-space action.
  AffineMap physical_action() const;
};

/// Affine renormalization of the parabola cap over [a, a+delta] onto [0,1]:
/// (xi1, xi2) -> ((xi1-a)/delta, (xi2 - 2 a xi1 + a^2)/delta^2).
AffineMap parabolic_rescaling(double a, double delta);

/// Random points of the (inner) R^-1-neighborhood of the curve, for coverage
/// and multiplicity sampling.
std::vector<Vec> sample_curve_neighborhood(Curve curve, double R, size_t count, uint64_t seed);

}  // namespace smallcap
