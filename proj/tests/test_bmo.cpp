#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ialpha/bmo.hpp"
#include "ialpha/carleson.hpp"
#include "ialpha/corpus.hpp"
#include "ialpha/error.hpp"
#include "test_util.hpp"

using namespace ialpha;
using testutil::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<BallWindow> dyadic_family(const Grid& g, double min_cells, int stride = 1) {
  const auto radii = dyadic_radii(g, min_cells * g.spacing());
  return window_family(g, radii, stride);
}

// 1-d cube value from the lag-count form: x and x+y both in a cube of m cells
// happens for m - |k| values of x at lag k.
double lag_form(int m, double h, double alpha, double (*diff_sq)(double)) {
  double s = 0.0;
  for (int k = 1; k < m; ++k) s += 2.0 * (m - k) * diff_sq(k * h) * std::pow(k * h, -(1.0 + 2.0 * alpha));
  return std::sqrt(h * h * s / (m * h));
}

}  // namespace

TEST_CASE("bmo norm: sign field") {
  const Grid g = make_grid(1, 1024, 1.0);
  CorpusSpec spec;
  spec.family = Family::sign_jump;
  spec.grid = g;
  const auto f = generate(spec);
  CHECK(f[0] == 0.0);
  CHECK(f[512] == 0.0);
  const double min_cells = 4.0;
  const auto rep = bmo_norm(f, dyadic_family(g, min_cells));
  CHECK(std::abs(rep.norm - 1.0) <= 2.0 / min_cells);
  CHECK(rep.norm <= 1.0);
  CHECK(rep.lower_bound);
  CHECK(rep.per_window[rep.argmax].oscillation == rep.norm);

  // Direct summation for one window straddling the jump off-center.
  const BallWindow w{{500, 0}, 0.0625};
  double mean = 0.0;
  int count = 0;
  for (int d = -63; d <= 63; ++d) {
    mean += f[static_cast<std::size_t>(500 + d)];
    ++count;
  }
  mean /= count;
  double osc = 0.0;
  for (int d = -63; d <= 63; ++d) osc += std::abs(f[static_cast<std::size_t>(500 + d)] - mean);
  osc /= count;
  const std::vector<BallWindow> one{w};
  CHECK(std::abs(bmo_norm(f, one).norm - osc) <= 1e-14);
  // Mass fraction p on the positive side: 4 p (1 - p) up to the zero sample.
  const double p = 75.0 / 127.0;
  CHECK(std::abs(osc - 4.0 * p * (1.0 - p)) <= 2.0 / 127.0);
}

TEST_CASE("bmo norm: invariances and bounds") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, dim == 1 ? 256 : 32, 1.0);
    const auto c = sample(g, [](const Point&) { return -2.0; });
    const auto fam = dyadic_family(g, 2.0);
    CHECK(bmo_norm(c, fam).norm == 0.0);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto f = testutil::band_limited(g, 8, seed);
      const auto a = bmo_norm(f, fam);
      const auto b = bmo_norm(testutil::scaled(f, 1.0, 7.0), fam);
      REQUIRE(a.per_window.size() == b.per_window.size());
      for (std::size_t i = 0; i < a.per_window.size(); ++i) {
        CHECK(a.per_window[i].oscillation >= 0.0);
        CHECK(std::abs(a.per_window[i].oscillation - b.per_window[i].oscillation) <= 1e-12);
      }
      CHECK(std::abs(a.norm - b.norm) <= 1e-12);
      double lo = f[0], hi = f[0];
      for (double v : f.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(a.norm <= 2.0 * (hi - lo));
      CHECK(bmo_norm(testutil::scaled(f, -3.0), fam).norm == doctest::Approx(3.0 * a.norm).epsilon(1e-13));
    }
    CHECK_THROWS_AS(bmo_norm(c, std::vector<BallWindow>{}), InvalidArgument);
  }
}

TEST_CASE("window family") {
  const Grid g = make_grid(2, 16, 1.0);
  const std::vector<double> radii{0.25, 0.125};
  const auto fam = window_family(g, radii, 4);
  CHECK(fam.size() == 2 * 16);
  CHECK(dyadic_radii(g, 2.0 * g.spacing()) == std::vector<double>{0.25, 0.125});
}

TEST_CASE("hoelder seminorm") {
  const Grid g = make_grid(1, 256, 1.0);
  CHECK(holder_seminorm(sample(g, [](const Point&) { return 1.0; }), 0.5) == 0.0);
  CHECK_THROWS_AS(holder_seminorm(sample(g, [](const Point&) { return 1.0; }), 0.0), InvalidArgument);
  CHECK_THROWS_AS(holder_seminorm(sample(g, [](const Point&) { return 1.0; }), 1.5), InvalidArgument);

  const auto f = testutil::band_limited(g, 4, 8);
  const double s = holder_seminorm(f, 0.7);
  CHECK(holder_seminorm(testutil::scaled(f, 2.0), 0.7) == 2.0 * s);
  CHECK(rel_err(holder_seminorm(testutil::scaled(f, -3.0), 0.7), 3.0 * s) <= 1e-15);

  // Brute force over every pair at periodic distance <= L/4.
  double brute = 0.0;
  for (int i = 0; i < 256; ++i) {
    for (int j = 0; j < 256; ++j) {
      const int d = std::min(std::abs(i - j), 256 - std::abs(i - j));
      if (d == 0 || d > 64) continue;
      brute = std::max(brute, std::abs(f[i] - f[j]) / std::pow(d * g.spacing(), 0.7));
    }
  }
  CHECK(rel_err(s, brute) <= 1e-14);

  // Stride only thins the first point of each pair.
  CHECK(holder_seminorm(f, 0.7, 4) <= s);

  const Grid g2 = make_grid(2, 32, 1.0);
  const auto lin = testutil::centered_affine(g2, 0.0, 0.6, 0.8);
  // Gradient norm 1, Lipschitz away from the wrap; the wrap only adds jumps.
  CHECK(holder_seminorm(lin, 1.0) >= 1.0 - 1e-12);
}

TEST_CASE("hoelder seminorm of the cusp") {
  const Grid g = make_grid(1, 4096, 1.0);
  for (double gamma : {0.3, 0.5, 0.8}) {
    CorpusSpec spec;
    spec.family = Family::cusp;
    spec.gamma = gamma;
    spec.grid = g;
    const double s = holder_seminorm(generate(spec), gamma);
    CHECK(std::abs(s - 1.0) <= 0.05);
  }
}

TEST_CASE("cube family and checks") {
  const Grid g = make_grid(1, 64, 1.0);
  const auto fam = cube_family(g, 16, 4, 8);
  CHECK(fam.size() == 3 * 8);
  CHECK_THROWS_AS(cube_family(g, 16, 2, 8), InvalidArgument);
  CHECK_THROWS_AS(cube_family(g, 4, 8, 8), InvalidArgument);
  const auto f = testutil::band_limited(g, 3, 1);
  const std::vector<Cube> too_big{Cube{{0, 0}, 64}};
  CHECK_THROWS_AS(strichartz_first(f, 0.5, too_big), InvalidArgument);
  const std::vector<Cube> too_small{Cube{{0, 0}, 2}};
  CHECK_THROWS_AS(strichartz_second(f, 0.5, too_small), InvalidArgument);
  CHECK_THROWS_AS(strichartz_first(f, 0.5, std::vector<Cube>{}), InvalidArgument);
  CHECK_THROWS_AS(strichartz_first(f, 1.0, fam), InvalidArgument);
  CHECK_THROWS_AS(strichartz_second(f, 2.0, fam), InvalidArgument);
  CHECK(to_string(DifferenceOrder::second_difference) == "second_difference");
}

TEST_CASE("strichartz closed forms") {
  const Grid g = make_grid(1, 256, 1.0);
  const double h = g.spacing();
  const auto lin = testutil::centered_affine(g, 0.3, 2.0, 0.0);
  const auto sq = sample(g, [](const Point& x) { return (x[0] - 0.5) * (x[0] - 0.5); });
  for (int m : {8, 32, 64}) {
    const std::vector<Cube> q{Cube{{128, 0}, m}};
    for (double alpha : {0.25, 0.5, 0.9}) {
      const double expect = lag_form(m, h, alpha, [](double y) { return 4.0 * y * y; });
      CHECK(rel_err(strichartz_first(lin, alpha, q).B, expect) <= 1e-12);
    }
    for (double alpha : {0.3, 1.0, 1.7}) {
      CHECK(strichartz_second(lin, alpha, q).B <= 1e-10);
      const double expect = lag_form(m, h, alpha, [](double y) { return 4.0 * y * y * y * y; });
      CHECK(rel_err(strichartz_second(sq, alpha, q).B, expect) <= 1e-6);
    }
  }
}

TEST_CASE("strichartz invariances") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, dim == 1 ? 256 : 32, 1.0);
    const auto f = testutil::band_limited(g, 4, 12);
    const auto cubes = cube_family(g, dim == 1 ? 64 : 8, 4, dim == 1 ? 16 : 4);
    const auto c = sample(g, [](const Point&) { return 5.0; });
    CHECK(strichartz_first(c, 0.5, cubes).B == 0.0);
    CHECK(strichartz_second(c, 1.5, cubes).B == 0.0);

    const auto a = strichartz_first(f, 0.5, cubes);
    const auto a2 = strichartz_first(testutil::scaled(f, -2.0), 0.5, cubes);
    CHECK(a2.B == 2.0 * a.B);
    const auto b = strichartz_second(f, 1.2, cubes);
    CHECK(strichartz_second(testutil::scaled(f, 2.0), 1.2, cubes).B == 2.0 * b.B);
    CHECK(rel_err(strichartz_second(testutil::scaled(f, 3.0), 1.2, cubes).B, 3.0 * b.B) <= 1e-14);

    const auto ac = strichartz_first(testutil::scaled(f, 1.0, 4.0), 0.5, cubes);
    const auto bc = strichartz_second(testutil::scaled(f, 1.0, 4.0), 1.2, cubes);
    for (std::size_t i = 0; i < a.per_cube.size(); ++i) {
      CHECK(a.per_cube[i].value >= 0.0);
      CHECK(std::abs(ac.per_cube[i].value - a.per_cube[i].value) <= 1e-10);
      CHECK(std::abs(bc.per_cube[i].value - b.per_cube[i].value) <= 1e-10);
    }
    CHECK(a.per_cube[a.argmax].value == a.B);
    CHECK(a.lower_bound);

    // Affine fields: cubes kept away from the wrap.
    const auto lin = testutil::centered_affine(g, 1.0, -0.5, 0.25);
    const int n = g.n_per_axis;
    const std::vector<Cube> inner{Cube{{n / 2, dim == 2 ? n / 2 : 0}, n / 4}};
    CHECK(strichartz_second(lin, 0.8, inner).B <= 1e-10);
    const auto with_lin = testutil::add(f, lin);
    CHECK(std::abs(strichartz_second(with_lin, 0.8, inner).B - strichartz_second(f, 0.8, inner).B) <= 1e-10);
  }
}

TEST_CASE("strichartz: single frequency refines stably") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    double B[2];
    for (int i = 0; i < 2; ++i) {
      const int n = 256 << i;
      const Grid g = make_grid(1, n, 1.0);
      const auto f = sample(g, [](const Point& x) { return std::cos(2.0 * kPi * x[0]); });
      B[i] = strichartz_first(f, alpha, cube_family(g, n / 4, n / 32, n / 16)).B;
    }
    CHECK(std::abs(B[1] / B[0] - 1.0) < 0.20);
  }
}

TEST_CASE("ball form of the second-difference functional") {
  const Grid g = make_grid(1, 256, 1.0);
  const double h = g.spacing();
  const auto centers = strided_centers(g, 8);
  const std::vector<double> radii{0.25, 0.125, 0.0625};
  CHECK(strichartz_ball_second(sample(g, [](const Point&) { return 1.0; }), 0.7, centers, radii).B == 0.0);
  const auto f = testutil::band_limited(g, 5, 2);
  const auto r = strichartz_ball_second(f, 0.7, centers, radii);
  CHECK(rel_err(strichartz_ball_second(testutil::scaled(f, 3.0), 0.7, centers, radii).B, 9.0 * r.B) <= 1e-13);
  CHECK(r.per_cube.size() == centers.size() * radii.size());

  // Direct evaluation for one (z, R) on the quadratic.
  const auto sq = sample(g, [](const Point& x) { return (x[0] - 0.5) * (x[0] - 0.5); });
  const double R = 0.125;
  const std::vector<std::size_t> z{128};
  const std::vector<double> rr{R};
  double direct = 0.0;
  const int m = static_cast<int>(std::ceil(R / 2 / h)) - 1;  // |x - z| < R/2
  for (int x = -m; x <= m; ++x) {
    for (int k = 1; k * h <= R / 2 + 1e-12; ++k) {
      direct += 2.0 * 4.0 * std::pow(k * h, 4) * std::pow(k * h, -(1.0 + 1.4));
    }
  }
  direct *= h * h / R;
  CHECK(rel_err(strichartz_ball_second(sq, 0.7, z, rr).B, direct) <= 1e-12);
  CHECK_THROWS_AS(strichartz_ball_second(f, 0.7, z, std::vector<double>{0.3}), InvalidArgument);
  CHECK_THROWS_AS(strichartz_ball_second(f, 0.7, z, std::vector<double>{h}), InvalidArgument);
}

TEST_CASE("tempered growth") {
  const GrowthFunction one{1, [](const Point&) { return 1.0; }, 0.0, 1.0};
  const auto t = tempered_growth(one, 1.0, 1e3);
  const double true_tail = 2.0 * std::atan(1e-3);
  CHECK(t.finite);
  CHECK(std::abs(t.truncated - (kPi - true_tail)) <= 1e-12);
  CHECK(t.tail_bound < 2e-3);
  CHECK(t.tail_bound >= true_tail);

  const GrowthFunction steep{1, [](const Point& x) { return std::pow(std::abs(x[0]), 1.5); }, 1.5, 1.0};
  const auto d = tempered_growth(steep, 1.0, 1e2);
  CHECK_FALSE(d.finite);
  CHECK(d.tail_bound == std::numeric_limits<double>::infinity());

  const GrowthFunction root{1, [](const Point& x) { return std::sqrt(std::abs(x[0])); }, 0.5, 1.0};
  const auto r = tempered_growth(root, 1.0, 1e3);
  CHECK(r.finite);
  // int_R |x|^{1/2} / (1 + x^2) dx = pi sqrt 2.
  CHECK(r.truncated <= kPi * std::sqrt(2.0));
  CHECK(r.truncated + r.tail_bound >= kPi * std::sqrt(2.0));
  CHECK(kPi * std::sqrt(2.0) - r.truncated == doctest::Approx(4.0 / std::sqrt(1e3)).epsilon(1e-2));

  // int_{R^2} dx / (1 + |x|^3) = 2 pi * 2 pi / (3 sqrt 3).
  const GrowthFunction plane{2, [](const Point&) { return 1.0; }, 0.0, 1.0};
  const auto p = tempered_growth(plane, 1.0, 1e2);
  const double total = 4.0 * kPi * kPi / (3.0 * std::sqrt(3.0));
  CHECK(p.truncated <= total);
  CHECK(p.truncated + p.tail_bound >= total);
  CHECK(p.tail_bound <= 1.1 * 2.0 * kPi / 1e2);

  CHECK_THROWS_AS(tempered_growth(one, 0.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(tempered_growth(one, 1.0, 0.5), InvalidArgument);
}
