#include "smallcap/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace smallcap {

std::vector<double> envelope_scales(double R) {
  std::vector<double> out;
  for (double s = 1.0 / std::sqrt(R); s < 1.0 - 1e-12; s *= 2.0) out.push_back(s);
  out.push_back(1.0);
  return out;
}

size_t EnvelopeAnalysis::TileTable::index_of(const std::array<int, 3>& k) const {
  size_t idx = 0;
  for (int i = 0; i < 3; ++i)
    idx = idx * static_cast<size_t>(hi[i] - lo[i] + 1) + static_cast<size_t>(k[i] - lo[i]);
  return idx;
}

bool EnvelopeAnalysis::TileTable::in_range(const std::array<int, 3>& k) const {
  for (int i = 0; i < 3; ++i)
    if (k[i] < lo[i] || k[i] > hi[i]) return false;
  return true;
}

EnvelopeAnalysis::EnvelopeAnalysis(const GridFunction& f, double R, const Partition& part) : R_(R) {
  if (f.dim != 3) throw std::invalid_argument("EnvelopeAnalysis: cone machinery is 3D");
  cell_volume_ = f.cell_volume();
  scales_ = envelope_scales(R);
  const double torus_reach = std::sqrt(3.0) * f.n * f.dx / 2.0;

  for (double s : scales_) {
    CapFamily sect = sector_planks(R, s);
    std::vector<TileTable> tabs(sect.size());
    for (size_t t = 0; t < sect.size(); ++t) {
      TileTable& tab = tabs[t];
      tab.u = envelope_box(sect.caps[t], s, R);
      size_t cells = 1;
      for (int i = 0; i < 3; ++i) {
        int k = static_cast<int>(std::floor((torus_reach + tab.u.half[i]) / (2.0 * tab.u.half[i]))) + 1;
        tab.lo[i] = -k;
        tab.hi[i] = k;
        cells *= static_cast<size_t>(2 * k + 1);
      }
      tab.mass.assign(cells, 0.0);
    }
    theta_to_tau_.push_back(assign_by_anchor(part.family, sect));
    sectors_.push_back(std::move(sect));
    tables_.push_back(std::move(tabs));
  }

  // moments of f itself
  sorted_mags_.reserve(f.total());
  for (const auto& z : f.samples) {
    double a = std::abs(z);
    sorted_mags_.push_back(a);
    f_l2sq_ += a * a * f.cell_volume();
    f_l4_4_ += a * a * a * a * f.cell_volume();
    f_sup_ = std::max(f_sup_, a);
  }
  std::sort(sorted_mags_.begin(), sorted_mags_.end());

  // one pass per theta: project, then fold |f_theta|^2 into every scale
  GridFunction fhat = transform(f);
  const int n = f.n;
  const double dx = f.dx;
  const double cellv = f.cell_volume();
  for (size_t th = 0; th < part.size(); ++th) {
    GridFunction piece = project_spectrum(fhat, part.mult[th]);
    fft_in_place(piece, true);
    for (size_t sc = 0; sc < scales_.size(); ++sc) {
      TileTable& tab = tables_[sc][theta_to_tau_[sc][th]];
      const Vec a0 = tab.u.axes[0], a1 = tab.u.axes[1], a2 = tab.u.axes[2];
      const double e0 = 2.0 * tab.u.half[0], e1 = 2.0 * tab.u.half[1], e2 = 2.0 * tab.u.half[2];
      size_t flat = 0;
      for (int i = 0; i < n; ++i) {
        double x0 = (i - n / 2) * dx;
        for (int j = 0; j < n; ++j) {
          double x1 = (j - n / 2) * dx;
          double d0ij = x0 * a0.v[0] + x1 * a0.v[1];
          double d1ij = x0 * a1.v[0] + x1 * a1.v[1];
          double d2ij = x0 * a2.v[0] + x1 * a2.v[1];
          for (int k = 0; k < n; ++k, ++flat) {
            double m = std::norm(piece.samples[flat]);
            if (m == 0.0) continue;
            double x2 = (k - n / 2) * dx;
            std::array<int, 3> key{
                static_cast<int>(std::floor((d0ij + x2 * a0.v[2]) / e0 + 0.5)),
                static_cast<int>(std::floor((d1ij + x2 * a1.v[2]) / e1 + 0.5)),
                static_cast<int>(std::floor((d2ij + x2 * a2.v[2]) / e2 + 0.5))};
            tab.mass[tab.index_of(key)] += m * cellv;
          }
        }
      }
    }
  }
}

double EnvelopeAnalysis::scale_mass(size_t sc) const {
  double s = 0.0;
  for (const TileTable& tab : tables_.at(sc))
    for (double m : tab.mass) s += m;
  return s;
}

double EnvelopeAnalysis::l2_defect(size_t sc) const {
  double denom = scale_mass(sc);
  if (denom == 0.0) throw std::runtime_error("l2_defect: zero envelope mass");
  return f_l2sq_ / denom;
}

double EnvelopeAnalysis::gwz_rhs() const {
  double total = 0.0;
  for (size_t sc = 0; sc < scales_.size(); ++sc)
    for (const TileTable& tab : tables_[sc]) {
      double invu = 1.0 / tab.u.volume();
      for (double m : tab.mass) total += invu * m * m;
    }
  return total;
}

std::vector<EnvelopeCell> EnvelopeAnalysis::significant_cells(double lambda, size_t sc) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("significant_cells: lambda must be positive");
  double count = static_cast<double>(sectors_.at(sc).size());
  double threshold = lambda * lambda / (std::log(R_) * count * count);
  std::vector<EnvelopeCell> out;
  for (size_t t = 0; t < tables_[sc].size(); ++t) {
    const TileTable& tab = tables_[sc][t];
    double invu = 1.0 / tab.u.volume();
    std::array<int, 3> k{};
    size_t idx = 0;
    for (k[0] = tab.lo[0]; k[0] <= tab.hi[0]; ++k[0])
      for (k[1] = tab.lo[1]; k[1] <= tab.hi[1]; ++k[1])
        for (k[2] = tab.lo[2]; k[2] <= tab.hi[2]; ++k[2], ++idx) {
          double m = tab.mass[idx];
          if (m > 0.0 && invu * m >= threshold)
            out.push_back({scales_[sc], t, k, m});
        }
  }
  return out;
}

double EnvelopeAnalysis::amplitude_rhs(double lambda) const {
  double total = 0.0;
  for (size_t sc = 0; sc < scales_.size(); ++sc) {
    double count = static_cast<double>(sectors_[sc].size());
    double threshold = lambda * lambda / (std::log(R_) * count * count);
    for (const TileTable& tab : tables_[sc]) {
      double invu = 1.0 / tab.u.volume();
      for (double m : tab.mass)
        if (invu * m >= threshold) total += invu * m * m;
    }
  }
  return total;
}

std::pair<double, double> EnvelopeAnalysis::amplitude_check(double lambda) const {
  if (!(lambda >= std::pow(R_, -100.0) * f_sup_) || !(lambda <= 4.0 * f_sup_))
    throw std::invalid_argument("amplitude_check: lambda outside the admissible range");
  double lhs = std::pow(lambda, 4.0) * superlevel_measure(lambda);
  return {lhs, amplitude_rhs(lambda)};
}

double EnvelopeAnalysis::superlevel_measure(double lambda) const {
  auto it = std::upper_bound(sorted_mags_.begin(), sorted_mags_.end(), lambda);
  auto count = static_cast<double>(sorted_mags_.end() - it);
  return count * cell_volume_;
}

double EnvelopeAnalysis::tile_volume(size_t sc, size_t tau) const { return tables_.at(sc).at(tau).u.volume(); }

double EnvelopeAnalysis::cell_mass(size_t sc, size_t tau, const std::array<int, 3>& tile) const {
  const TileTable& tab = tables_.at(sc).at(tau);
  if (!tab.in_range(tile)) return 0.0;
  return tab.mass[tab.index_of(tile)];
}

double wave_envelope(const GridFunction& f, const Partition& part, const CapFamily& sectors,
                     size_t tau_index, const OrientedBox& u) {
  if (tau_index >= sectors.size()) throw std::invalid_argument("wave_envelope: bad tau index");
  auto parent = assign_by_anchor(part.family, sectors);
  GridFunction fhat = transform(f);
  double total = 0.0;
  for (size_t th = 0; th < part.size(); ++th) {
    if (parent[th] != tau_index) continue;
    GridFunction piece = project_spectrum(fhat, part.mult[th]);
    fft_in_place(piece, true);
    for (size_t i = 0; i < piece.total(); ++i)
      if (u.contains(piece.point(i))) total += std::norm(piece.samples[i]) * piece.cell_volume();
  }
  return total;
}

double layer_cake_lp(const GridFunction& f, double p) {
  double sup = 0.0;
  for (const auto& z : f.samples) sup = std::max(sup, std::abs(z));
  if (sup == 0.0) return 0.0;
  double total = 0.0;
  for (double lam = sup; lam > 1e-30 * sup; lam /= 2.0) {
    size_t count = 0;
    for (const auto& z : f.samples) {
      double a = std::abs(z);
      if (a > lam / 2.0 && a <= lam) ++count;
    }
    total += std::pow(lam / 2.0, p) * static_cast<double>(count) * f.cell_volume();
  }
  return total;
}

}  // namespace smallcap
