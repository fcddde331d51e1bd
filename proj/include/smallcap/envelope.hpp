#pragma once

#include "smallcap/extremals.hpp"

namespace smallcap {

/// One physical tile U || U_tau at a dyadic scale with its envelope mass.
struct EnvelopeCell {
  double s = 0.0;
  size_t tau = 0;
  std::array<int, 3> tile{0, 0, 0};
  double l2sq = 0.0;  // ||S_U f||_2^2
};

/// Dyadic scale grid {R^-1/2 * 2^j} capped at 1 (1 always included).
std::vector<double> envelope_scales(double R);

/// Precomputed wave-envelope tables of one cone-supported f: for every dyadic
/// s, every tau in S_s and every tile U || U_tau, the mass
/// ||S_U f||_2^2 = int_U sum_{theta in tau} |f_theta|^2.
/// Each f_theta is materialized once and folded into all scales.
class EnvelopeAnalysis {
 public:
  EnvelopeAnalysis(const GridFunction& f, double R, const Partition& theta_partition);

  double R() const { return R_; }
  const std::vector<double>& scales() const { return scales_; }
  size_t n_tau(size_t scale_idx) const { return sectors_[scale_idx].size(); }
  double l2sq() const { return f_l2sq_; }
  double l4_4() const { return f_l4_4_; }
  double sup() const { return f_sup_; }

  /// sum over tau and tiles of ||S_U f||_2^2 at one scale.
  double scale_mass(size_t scale_idx) const;

  /// ||f||_2^2 / sum_U ||S_U f||_2^2 at the given scale.
  double l2_defect(size_t scale_idx) const;

  /// Triple sum  sum_s sum_tau sum_U |U|^{-1} ||S_U f||_2^4.
  double gwz_rhs() const;

  /// Cells with |U|^{-1} ||S_U f||_2^2 >= lambda^2 / (ln R * (#S_s)^2).
  std::vector<EnvelopeCell> significant_cells(double lambda, size_t scale_idx) const;

  /// Restriction of gwz_rhs to the significant cells of every scale.
  double amplitude_rhs(double lambda) const;

  /// lhs = lambda^4 * |{|f| > lambda}|; rhs = amplitude_rhs(lambda).
  /// Throws when lambda is outside [R^-100 ||f||_inf, 4 ||f||_inf].
  std::pair<double, double> amplitude_check(double lambda) const;

  /// Lattice measure of {|f| > lambda}.
  double superlevel_measure(double lambda) const;

  double tile_volume(size_t scale_idx, size_t tau) const;
  double cell_mass(size_t scale_idx, size_t tau, const std::array<int, 3>& tile) const;

 private:
  struct TileTable {
    OrientedBox u;
    std::array<int, 3> lo{0, 0, 0}, hi{-1, -1, -1};
    std::vector<double> mass;  // dense over the index box

    size_t index_of(const std::array<int, 3>& k) const;
    bool in_range(const std::array<int, 3>& k) const;
  };

  double R_ = 0.0;
  double cell_volume_ = 0.0;
  double f_l2sq_ = 0.0, f_l4_4_ = 0.0, f_sup_ = 0.0;
  std::vector<double> scales_;
  std::vector<CapFamily> sectors_;               // per scale
  std::vector<std::vector<size_t>> theta_to_tau_;  // per scale, per theta
  std::vector<std::vector<TileTable>> tables_;   // per scale, per tau
  std::vector<double> sorted_mags_;
};

/// One-off ||S_U f||_2^2 without building the full analysis.
double wave_envelope(const GridFunction& f, const Partition& theta_partition,
                     const CapFamily& sectors, size_t tau_index, const OrientedBox& u);

/// Dyadic layer-cake reconstruction  sum_lambda lambda^p |{|f| ~ lambda}|.
double layer_cake_lp(const GridFunction& f, double p);

}  // namespace smallcap
