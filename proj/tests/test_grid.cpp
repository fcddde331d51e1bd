#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smallcap/grid.hpp"

using namespace smallcap;

namespace {

std::mt19937_64 rng(5150u);

GridFunction random_grid(int dim, int n) {
  GridFunction f = make_grid(dim, n);
  std::normal_distribution<double> g;
  for (auto& z : f.samples) z = {g(rng), g(rng)};
  return f;
}

}  // namespace

TEST_CASE("delta at the origin transforms to the constant n^{-dim/2}") {
  for (int dim : {2, 3}) {
    int n = dim == 2 ? 64 : 16;
    GridFunction f = make_grid(dim, n);
    std::vector<int> mid(static_cast<size_t>(dim), n / 2);
    f.samples[f.flat_index(mid)] = 1.0;
    GridFunction fh = transform(f);
    double want = std::pow(n, -0.5 * dim);
    for (const auto& z : fh.samples) {
      CHECK(z.real() == doctest::Approx(want).epsilon(1e-12));
      CHECK(std::fabs(z.imag()) < 1e-12);
    }
  }
}

TEST_CASE("a lattice exponential transforms to a delta at its frequency") {
  int n = 32;
  GridFunction f = make_grid(2, n);
  int k0 = 5, k1 = -9;  // frequency indices relative to the center
  for (size_t i = 0; i < f.total(); ++i) {
    Vec x = f.point(i);
    double phase = 2.0 * M_PI * (k0 * f.freq_spacing() * x.v[0] + k1 * f.freq_spacing() * x.v[1]);
    f.samples[i] = {std::cos(phase), std::sin(phase)};
  }
  GridFunction fh = transform(f);
  std::vector<int> at{n / 2 + k0, n / 2 + k1};
  size_t flat = fh.flat_index(at);
  CHECK(std::abs(fh.samples[flat]) == doctest::Approx(std::pow(n, 1.0)).epsilon(1e-12));
  for (size_t i = 0; i < fh.total(); ++i)
    if (i != flat) CHECK(std::abs(fh.samples[i]) < 1e-9);
}

TEST_CASE("transform is unitary: Parseval and inverse round trip at 1e-12") {
  for (int dim : {2, 3}) {
    int n = dim == 2 ? 256 : 32;
    GridFunction f = random_grid(dim, n);
    GridFunction fh = transform(f);
    double a = 0.0, b = 0.0;
    for (const auto& z : f.samples) a += std::norm(z);
    for (const auto& z : fh.samples) b += std::norm(z);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));

    GridFunction back = transform(fh, true);
    double err = 0.0;
    for (size_t i = 0; i < f.total(); ++i) err = std::max(err, std::abs(back.samples[i] - f.samples[i]));
    CHECK(err < 1e-12 * lp_norm(f, std::numeric_limits<double>::infinity()));
  }
}

TEST_CASE("lp_norm of a constant matches c * V^{1/p}") {
  GridFunction f = make_grid(2, 64, 0.5);  // torus side 32, volume 1024
  for (auto& z : f.samples) z = 3.0;
  for (double p : {1.0, 2.0, 4.0, 7.5}) {
    CHECK(lp_norm(f, p) == doctest::Approx(3.0 * std::pow(1024.0, 1.0 / p)).epsilon(1e-12));
  }
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == doctest::Approx(3.0));
}

TEST_CASE("lp_norm at p=2 equals the Parseval norm") {
  GridFunction f = random_grid(2, 128);
  GridFunction fh = transform(f);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(lp_norm(fh, 2.0) * std::pow(f.dx / fh.freq_spacing(), 0.0)).epsilon(1e-10));
  // same measure convention on both sides: compare the raw sums
  double a = 0.0, b = 0.0;
  for (const auto& z : f.samples) a += std::norm(z);
  for (const auto& z : fh.samples) b += std::norm(z);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("Hoelder monotonicity of volume-normalized norms on the torus") {
  GridFunction f = random_grid(2, 64);
  double V = std::pow(64 * f.dx, 2.0);
  for (auto [p, q] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {2.0, 4.0}, {2.5, 6.0}}) {
    CHECK(lp_norm(f, p) <= std::pow(V, 1.0 / p - 1.0 / q) * lp_norm(f, q) * (1.0 + 1e-12));
  }
}

TEST_CASE("regional norms are monotone in the region") {
  GridFunction f = random_grid(2, 64);
  OrientedBox small = axis_box(Vec(0.0, 0.0), Vec(3.0, 2.0));
  OrientedBox large = axis_box(Vec(0.0, 0.0), Vec(9.0, 7.0));
  CHECK(lp_norm(f, 4.0, small) <= lp_norm(f, 4.0, large));
  CHECK(lp_norm(f, 4.0, large) <= lp_norm(f, 4.0));
  CHECK(lp_norm_ball(f, 4.0, Vec(0.0, 0.0), 2.0) <= lp_norm_ball(f, 4.0, Vec(0.0, 0.0), 5.0));
}

TEST_CASE("grid_for_scale wires the documented lattice") {
  GridFunction f = grid_for_scale(2, 256.0);
  CHECK(f.n == 1024);
  CHECK(f.dx == 0.5);
  CHECK(f.freq_spacing() == doctest::Approx(1.0 / 512.0));
  CHECK_THROWS(grid_for_scale(3, 4096.0));  // memory cap
}

TEST_CASE("make_grid validates its arguments") {
  CHECK_THROWS(make_grid(4, 64));
  CHECK_THROWS(make_grid(2, 100));
  CHECK_THROWS(make_grid(2, 2));  // not divisible by 4
  CHECK_THROWS(make_grid(2, 64, -1.0));
}
