#pragma once

#include "smallcap/caps.hpp"
#include "smallcap/grid.hpp"

namespace smallcap {

/// Frequency-lattice samples of one smooth cutoff psi_gamma, stored sparsely.
struct Multiplier {
  std::vector<int64_t> idx;   // flat indices into the frequency grid
  std::vector<double> value;  // psi at those lattice points
};

/// Normalized smooth partition of unity attached to a cap family on a fixed
/// frequency lattice: psi_gamma = b_gamma / max(sum b, 1), where b_gamma is a
/// product of per-axis tapers, flat on the cap and vanishing outside its
/// (1+smoothness)-dilate. The family sums to exactly 1 wherever some raw bump
/// reaches its flat core, in particular on the covered neighborhood lattice.
struct Partition {
  int dim = 2;
  int n = 0;
  double dx = 0.5;
  CapFamily family;
  double smoothness = 0.5;
  std::vector<Multiplier> mult;        // one per cap
  std::vector<uint8_t> support_mask;   // 1 where some bump is positive
  std::vector<int64_t> covered;        // lattice points of the inner R^-1-neighborhood

  size_t size() const { return mult.size(); }
};

/// Lattice points guaranteed to lie in the R^-1-neighborhood of the curve
/// (vertical-slab inner model for the parabola, radial band for the cone).
std::vector<int64_t> covered_lattice_points(Curve curve, double R, const GridFunction& grid);

/// Throws when a covered lattice point has zero raw bump sum (coverage
/// failure). Pass check_coverage = false for families that deliberately cover
/// only part of the neighborhood (the covered list is left empty then).
Partition smooth_partition(const CapFamily& family, int n, double dx, double smoothness = 0.5,
                           bool check_coverage = true);
Partition smooth_partition(const CapFamily& family, const GridFunction& grid, double smoothness = 0.5,
                           bool check_coverage = true);

/// Fraction of the spectral mass sum|fhat|^2 outside the partition support.
double mass_outside_support(const GridFunction& fhat, const Partition& part);

/// Spectrum-side projection: zero outside the multiplier, psi-weighted inside.
GridFunction project_spectrum(const GridFunction& fhat, const Multiplier& psi);

/// f_gamma = (psi_gamma fhat)^v. Checks the support precondition and reports
/// the measured outside mass on violation.
GridFunction cap_projection(const GridFunction& f, const Partition& part, size_t cap_index,
                            double outside_tol = 1e-10);

/// Pointwise (sum_gamma |f_gamma|^2)^(1/2), returned as a real-valued grid.
GridFunction square_function(const GridFunction& f, const Partition& part, double outside_tol = 1e-10);

/// Literal sum of the cap projections (reconstruction witness).
GridFunction reconstruct_sum(const GridFunction& f, const Partition& part);

/// Smooth weight ~1 on the box with polynomial decay (1 + dist/edge)^-20 per axis.
double box_weight(const OrientedBox& box, const Vec& x);

/// Ratio  int_box |sum f_i|^2  /  int sum |f_i|^2 w_box^2 ; 0/0 counts as 0.
double local_orthogonality_defect(std::span<const GridFunction> parts, const OrientedBox& box);

}  // namespace smallcap
