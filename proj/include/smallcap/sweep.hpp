#pragma once

#include <optional>
#include <string>

#include "smallcap/envelope.hpp"
#include "smallcap/slice.hpp"

namespace smallcap {

enum class Backend { fft, indicator };
enum class ExampleKind { concentrated, flat, cone_bump_example };

std::string backend_name(Backend b);
std::string example_name(ExampleKind e);

struct SweepConfig {
  Curve curve = Curve::parabola;
  double exponent = 0.75;  // alpha or beta
  double p = 8.0;
  std::vector<double> R_list;
  Backend backend = Backend::indicator;
  ExampleKind example = ExampleKind::concentrated;
  int jobs = 1;
  uint64_t seed = 0;
  std::optional<double> tolerance;  // slope tolerance override
  std::string output;
  std::string format = "json";
};

struct SweepPoint {
  double R = 0.0, lhs = 0.0, rhs = 0.0, ratio = 0.0, wall_time = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepPoint> points;
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  double predicted_slope = 0.0;
  double tolerance = 0.0;
  bool fit_excluded_smallest = false;
  bool pass = false;
};

/// Ordinary least squares on (log R, log value); returns slope and its
/// standard error. Throws on fewer than 3 points or nonpositive values.
std::pair<double, double> fit_exponent(std::span<const std::pair<double, double>> points);

double default_slope_tolerance(const SweepConfig& cfg);

/// One (lhs, rhs) evaluation of the configured example at scale R.
SweepPoint evaluate_sweep_point(const SweepConfig& cfg, double R);

SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace smallcap
