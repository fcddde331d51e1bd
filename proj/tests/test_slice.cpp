#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smallcap/slice.hpp"

using namespace smallcap;

namespace {
std::mt19937_64 rng(31415u);
std::uniform_real_distribution<double> u01(0.0, 1.0);
}  // namespace

TEST_CASE("slice_family: one plank per gamma, centers on S_r, tangent long axis") {
  const double R = 4096.0, beta = 0.75;
  auto planks = slice_family(R, beta, 100.0);
  CHECK(planks.size() == static_cast<size_t>(std::ceil(2.0 * std::pow(R, beta))));
  for (const auto& p : planks) {
    CHECK(p.center.norm() == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(std::fabs(p.center.dot(p.tangent)) < 1e-9 * 100.0);  // tangent is perpendicular to the radius
  }
}

TEST_CASE("slice_family: consecutive centers are ~ r R^-beta separated") {
  const double R = 4096.0, beta = 0.75;
  for (double r : {16.0, 256.0, 4096.0}) {
    auto planks = slice_family(R, beta, r);
    double gap = (planks[1].center - planks[0].center).norm();
    double predicted = r * std::pow(R, -beta);
    CHECK(gap >= predicted / 8.0);
    CHECK(gap <= predicted * 8.0);
  }
}

TEST_CASE("slice_family at r=0 degenerates to a bush through the origin") {
  auto planks = slice_family(1024.0, 0.75, 0.0);
  for (const auto& p : planks) CHECK(p.center.norm() == 0.0);
  CHECK(brute_overlap(Vec(0.0, 0.0), planks) == static_cast<int>(planks.size()));
}

TEST_CASE("brute_overlap: far points hit nothing") {
  const double R = 1024.0, beta = 0.75, r = 64.0;
  auto planks = slice_family(R, beta, r);
  double far = r + std::pow(R, beta) + 2.0;
  CHECK(brute_overlap(Vec(far, far), planks) == 0);
}

TEST_CASE("predicted_overlap: regime values and seam continuity") {
  const double R = 4096.0, beta = 0.75;
  double rb = std::pow(R, beta);

  auto core = predicted_overlap(5.0, 64.0, R, beta);
  CHECK(core.regime == Regime::core);
  CHECK(core.value == doctest::Approx(rb / 8.0));

  auto inner = predicted_overlap(16.0, 64.0, R, beta);
  CHECK(inner.regime == Regime::inner);
  CHECK(inner.value == doctest::Approx(rb / 32.0));

  // d = r: inner and outer formulas agree
  auto at_seam = predicted_overlap(64.0, 64.0, R, beta);
  CHECK(at_seam.value == doctest::Approx(rb / 64.0));
  auto outer = predicted_overlap(65.0, 64.0, R, beta);
  CHECK(outer.regime == Regime::outer);
  CHECK(outer.value == doctest::Approx(rb / 65.0));

  // d = R^beta with r <= R^beta: a single plank remains
  auto edge = predicted_overlap(rb, 64.0, R, beta);
  CHECK(edge.value == doctest::Approx(1.0));

  auto beyond = predicted_overlap(rb + 1.0, 64.0, R, beta);
  CHECK_FALSE(beyond.in_range);
  CHECK(beyond.value == 0.0);

  // Case 3 (r >= R^beta): the inner regime is capped at r^-1 R^(2 beta)
  double r3 = 2.0 * rb;
  auto capped = predicted_overlap(rb / 2.0 - 1.0, r3, R, beta);
  CHECK(capped.regime == Regime::inner);
  auto past_cap = predicted_overlap(rb / 2.0 + 1.0, r3, R, beta);
  CHECK_FALSE(past_cap.in_range);
}

TEST_CASE("example: r=2^6, d=2^4, R=2^12, beta=3/4 measures ~ R^beta (rd)^{-1/2} = 16") {
  const double R = 4096.0, beta = 0.75, r = 64.0, d = 16.0;
  auto planks = slice_family(R, beta, r);
  int n = 0, ok = 0;
  double sum = 0.0;
  const double pred = std::pow(R, beta) / std::sqrt(r * d);  // = 16
  for (int k = 0; k < 50; ++k) {
    double psi = 2.0 * M_PI * u01(rng);
    Vec p((r + d) * std::cos(psi), (r + d) * std::sin(psi));
    int m = brute_overlap(p, planks);
    sum += m;
    ++n;
    if (m >= pred / 8.0 && m <= pred * 8.0) ++ok;
  }
  CHECK(pred == doctest::Approx(16.0));
  CHECK(ok == n);
  // the angular spacing 2 pi / R^beta prices the mean at ~ pred / (2 pi)
  CHECK(sum / n >= pred / 8.0);
  CHECK(sum / n <= pred);
}

TEST_CASE("brute vs predicted across regimes at (R, beta) = (2^10, 3/4)") {
  const double R = 1024.0, beta = 0.75;
  double rb = std::pow(R, beta);
  for (double r : {16.0, 64.0}) {
    auto planks = slice_family(R, beta, r);
    int ok = 0, n = 0;
    auto sample = [&](double d) {
      double psi = 2.0 * M_PI * u01(rng);
      Vec p((r + d) * std::cos(psi), (r + d) * std::sin(psi));
      int m = brute_overlap(p, planks);
      auto pred = predicted_overlap(d, r, R, beta);
      if (!pred.in_range) return;
      ++n;
      if (m >= pred.value / 8.0 && m <= pred.value * 8.0) ++ok;
    };
    for (int k = 0; k < 40; ++k) sample(5.0 * u01(rng));  // core
    double inner_hi = std::min(r / 2.0, rb * rb / (16.0 * r));
    if (inner_hi > 20.0)  // inner regime clear of the seams and the tangential support edge
      for (int k = 0; k < 40; ++k) sample(20.0 + (inner_hi - 20.0) * u01(rng));
    if (2.0 * r < rb / 4.0)  // outer regime clear of the d=r seam and the support edge ~R^beta/2
      for (int k = 0; k < 40; ++k) sample(2.0 * r + (rb / 4.0 - 2.0 * r) * u01(rng));
    CHECK(ok >= n * 95 / 100);
    CHECK(n >= 40);
  }
}

TEST_CASE("slice_integral analytic formulas at pinned points") {
  const double R = 1024.0, beta = 0.75;
  double rb = std::pow(R, beta);
  CHECK(slice_integral(0.0, 2.0, R, beta, SliceMethod::analytic) ==
        doctest::Approx(rb * rb + rb));
  double r = 256.0;  // R^beta <= r <= R
  double p = 6.0;
  CHECK(slice_integral(r, p, R, beta, SliceMethod::analytic) ==
        doctest::Approx(std::pow(r, 1.0 - p / 4.0) * std::pow(rb, 3.0) + rb * rb));
}

TEST_CASE("slice_integral: analytic is continuous across the r = R^beta seam within factor 2") {
  const double R = 1024.0, beta = 0.75;
  double rb = std::pow(R, beta);
  for (double p : {2.0, 4.0, 6.0}) {
    double below = slice_integral(std::nextafter(rb, 0.0), p, R, beta, SliceMethod::analytic);
    double above = slice_integral(rb, p, R, beta, SliceMethod::analytic);
    double q = below / above;
    CHECK(q <= 2.0);
    CHECK(q >= 0.5);
  }
}

TEST_CASE("slice_integral brute agrees pointwise with brute_overlap") {
  const double R = 256.0, beta = 0.75, r = 32.0;
  auto planks = slice_family(R, beta, r);
  // p = 2 sum equals the lattice sum of memberships
  double sweep = slice_integral(r, 2.0, R, beta, SliceMethod::brute);
  double direct = 0.0;
  double extent = r + std::pow(R, beta) / 2.0 + 2.0;
  for (int64_t y = -static_cast<int64_t>(extent); y <= static_cast<int64_t>(extent); ++y)
    for (int64_t x = -static_cast<int64_t>(extent); x <= static_cast<int64_t>(extent); ++x)
      direct += brute_overlap(Vec(static_cast<double>(x), static_cast<double>(y)), planks);
  CHECK(sweep == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("slice_integral brute is exactly reproducible") {
  const double R = 1024.0, beta = 0.75;
  double a = slice_integral(32.0, 4.0, R, beta, SliceMethod::brute);
  double b = slice_integral(32.0, 4.0, R, beta, SliceMethod::brute);
  CHECK(a == b);
  CHECK(a > 0.0);
}

TEST_CASE("lattice membership count matches total plank area within factor 2") {
  const double R = 1024.0, beta = 0.75, r = 64.0;
  auto planks = slice_family(R, beta, r);
  double mass = slice_integral(r, 2.0, R, beta, SliceMethod::brute);
  double area = static_cast<double>(planks.size()) * std::pow(R, beta);
  CHECK(mass >= area / 2.0);
  CHECK(mass <= area * 2.0);
}

TEST_CASE("slice brute vs analytic within the log budget (acceptance-4 shape)") {
  const double R = 1024.0, beta = 0.75;
  double band = 8.0 * std::log2(R);
  for (double r : {0.0, 32.0, 256.0}) {
    for (double p : {2.0, 4.0, 6.0}) {
      double brute = slice_integral(r, p, R, beta, SliceMethod::brute);
      double analytic = slice_integral(r, p, R, beta, SliceMethod::analytic);
      double q = brute / analytic;
      CHECK(q >= 1.0 / band);
      CHECK(q <= band);
    }
  }
}

TEST_CASE("total_integral: p=8, beta=1/2 has three equal analytic terms R^2") {
  const double R = 1024.0;
  double t = total_integral(8.0, R, 0.5, SliceMethod::analytic);
  CHECK(t == doctest::Approx(3.0 * R * R).epsilon(1e-12));
}

TEST_CASE("total_integral: term comparison at p=2 follows beta >= 1/2") {
  const double R = 1024.0;
  for (double beta : {0.5, 0.75, 1.0}) {
    double t1 = std::pow(R, beta);
    double t2 = std::pow(R, 2.0 - 0.5 + beta);
    double t3 = std::pow(R, 1.0 + 2.0 * beta);
    CHECK(total_integral(2.0, R, beta, SliceMethod::analytic) == doctest::Approx(t1 + t2 + t3));
    // R^{1+2 beta} dominates R^{3/2+beta} exactly when beta >= 1/2
    if (beta > 0.5) CHECK(t3 > t2);
    if (beta == 0.5) CHECK(t3 == doctest::Approx(t2));
  }
}

TEST_CASE("total brute vs analytic within 16 log^2 R at (4, 3/4, 2^9)") {
  const double R = 512.0, beta = 0.75, p = 4.0;
  double band = 16.0 * std::log2(R) * std::log2(R);
  double brute = total_integral(p, R, beta, SliceMethod::brute);
  double analytic = total_integral(p, R, beta, SliceMethod::analytic);
  double q = brute / analytic;
  CHECK(q >= 1.0 / band);
  CHECK(q <= band);
}
