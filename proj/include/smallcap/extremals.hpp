#pragma once

#include "smallcap/partition.hpp"

namespace smallcap {

struct ExponentQuery {
  Curve curve = Curve::parabola;
  double exponent = 0.5;  // alpha or beta
  double p = 4.0;
};

/// Growth exponent e with C(R) = R^e for the square-function constant:
///   parabola: alpha(1/2 - 2/p) for p >= 4 alpha + 2, else (alpha-1/2)(1/2 - 1/p)
///   cone:     beta/2 for p >= 8; beta/2 + 1/4 - 2/p on [4,8];
///             (beta-1/2)(1 - 2/p) on [2,4]
double predicted_exponent(const ExponentQuery& q);

/// FFT-model sharp examples (spectra built from the smooth partitions).
GridFunction concentrated_parabola(double R, double alpha, int oversample = 4);
GridFunction flat_parabola(double R, size_t theta_index, int oversample = 4);
GridFunction cone_bump(double R, int oversample = 4);

/// The partitions the examples are built from (for projections/ratios).
Partition concentrated_partition(double R, double alpha, int oversample = 4);
Partition flat_partition(double R, int oversample = 4);
Partition cone_partition(double R, int oversample = 4);

/// Idealized indicator model: f_gamma = |gamma*|^{-1} 1_{gamma*}.
struct IdealizedField {
  std::vector<OrientedBox> boxes;
  std::vector<double> amplitude;

  double eval(const Vec& x) const {
    double s = 0.0;
    for (size_t i = 0; i < boxes.size(); ++i)
      if (boxes[i].contains(x)) s += amplitude[i];
    return s;
  }
  double eval_square(const Vec& x) const {
    double s = 0.0;
    for (size_t i = 0; i < boxes.size(); ++i)
      if (boxes[i].contains(x)) s += amplitude[i] * amplitude[i];
    return s;
  }
};

IdealizedField indicator_model(const CapFamily& family);

/// Exact unit-lattice sums for the 2D indicator model, rasterized by row
/// difference arrays, split over dyadic shells B(0,2^k) \ B(0,2^{k-1}).
struct IndicatorSums {
  std::vector<double> shell_sums;  // sum over the shell of W(x)^{p/2}
  double total = 0.0;              // sum of W^{p/2} over the whole support
  double lhs_value = 0.0;          // model left-hand side (see the builders)
};

/// Concentrated parabola model: W = sum_gamma |gamma*|^{-2} 1_{gamma*};
/// lhs_value = || sum a 1 ||_{l^p(B(0,1))} (the bush witness).
IndicatorSums concentrated_indicator_sums(double R, double alpha, double p);

/// Flat parabola model over one canonical theta: gammas with anchors inside
/// theta's interval; lhs_value = |theta*|^{1/p - 1}.
IndicatorSums flat_indicator_sums(double R, double alpha, double p);

/// ||f||_p / ||(sum |f_gamma|^2)^{1/2}||_p for the FFT model.
double empirical_ratio(const GridFunction& f, const Partition& part, double p);

}  // namespace smallcap
