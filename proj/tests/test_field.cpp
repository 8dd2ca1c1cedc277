#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "ialpha/error.hpp"
#include "ialpha/field.hpp"
#include "ialpha/spectral.hpp"
#include "test_util.hpp"

using namespace ialpha;
using testutil::max_abs_diff;

namespace {

// Bump kernel on lattice offsets of radius `scale`, normalized in the test.
std::vector<std::pair<Offset, double>> oracle_kernel(const Grid& g, double scale) {
  std::vector<std::pair<Offset, double>> k;
  double total = 0.0;
  const int m = static_cast<int>(scale / g.spacing()) + 1;
  for (int a = -m; a <= m; ++a) {
    for (int b = (g.dim == 1 ? 0 : -m); b <= (g.dim == 1 ? 0 : m); ++b) {
      const double s = g.spacing() * std::hypot(a, b) / scale;
      if (s >= 1.0) continue;
      const double w = std::exp(-1.0 / (1.0 - s * s));
      k.push_back({Offset{a, b, 0.0}, w});
      total += w;
    }
  }
  for (auto& [d, w] : k) w /= total;
  return k;
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
  const Grid g = make_grid(1, 8, 1.0);
  CHECK(g.spacing() == 0.125);
  const Grid g2 = make_grid(2, 16, 2.0);
  CHECK(g2.size() == 256);
  CHECK(g2.spacing() == 0.125);
  CHECK_THROWS_AS(make_grid(1, 7, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1, 4, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(3, 8, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1, 8, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1, 8, -1.0), InvalidArgument);
}

TEST_CASE("index helpers are row-major and periodic") {
  const Grid g = make_grid(2, 8, 1.0);
  CHECK(flat_index(g, {2, 3}) == 19);
  CHECK(grid_index(g, 19) == Index{2, 3});
  CHECK(coordinates(g, 19)[0] == doctest::Approx(0.25));
  CHECK(coordinates(g, 19)[1] == doctest::Approx(0.375));
  CHECK(shifted(g, flat_index(g, {7, 0}), 1, -1) == flat_index(g, {0, 7}));
  CHECK(periodic_distance(g, {0, 0}, {7, 7}) == doctest::Approx(std::sqrt(2.0) / 8.0));
}

TEST_CASE("sample evaluates in row-major order and rejects poles") {
  const Grid g = make_grid(1, 8, 1.0);
  const auto c = sample(g, [](const Point&) { return 3.0; });
  for (double v : c.values()) CHECK(v == 3.0);
  const auto f = sample(g, [](const Point& x) { return std::cos(2.0 * std::numbers::pi * x[0]); });
  for (int k = 0; k < 8; ++k) CHECK(f[k] == std::cos(2.0 * std::numbers::pi * k / 8.0));
  try {
    sample(g, [](const Point& x) { return 1.0 / (x[0] - 0.5); });
    FAIL("expected a NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
  CHECK_THROWS_AS(SampledField(g, std::vector<double>(7, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(SampledField(g, std::vector<double>(8, NAN)), NumericError);
}

TEST_CASE("ball_mean") {
  const Grid g = make_grid(1, 1024, 1.0);
  const double h = g.spacing();
  const auto five = sample(g, [](const Point&) { return 5.0; });
  CHECK(ball_mean(five, {{100, 0}, 0.1}).mean == 5.0);

  const auto lin = sample(g, [](const Point& x) { return x[0]; });
  const auto m = ball_mean(lin, {{512, 0}, 0.25});
  CHECK(std::abs(m.mean - 0.5) <= 2.0 * h);
  // |d| h < 0.25 means |d| <= 255.
  CHECK(m.count == 511);

  const auto odd = sample(g, [](const Point& x) { return std::sin(2.0 * std::numbers::pi * (x[0] - 0.25)); });
  CHECK(std::abs(ball_mean(odd, {{256, 0}, 0.2}).mean) <= 1e-12);

  CHECK_THROWS_AS(ball_mean(lin, {{0, 0}, 0.5 * h}), InvalidArgument);
  CHECK_THROWS_AS(ball_mean(lin, {{0, 0}, 0.3}), InvalidArgument);
}

TEST_CASE("ball membership is strict") {
  const Grid g = make_grid(1, 64, 1.0);
  // radius exactly 3h excludes the offsets at distance 3h.
  CHECK(ball_offsets(g, 3.0 * g.spacing()).size() == 5);
  CHECK(annulus_offsets(g, g.spacing(), 3.0 * g.spacing()).size() == 6);
}

TEST_CASE("mollify reproduces constants and local affine functions") {
  const Grid g = make_grid(1, 512, 1.0);
  const double c = 2.75;
  const auto f = sample(g, [c](const Point&) { return c; });
  const auto mf = mollify(f, Mollifier{0.05});
  for (double v : mf.values()) CHECK(v == c);

  const auto saw = sample(g, [](const Point& x) { return 3.0 * x[0] - 1.0; });
  const double r = 0.05;
  const auto ms = mollify(saw, Mollifier{r});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = coordinates(g, i)[0];
    if (x > r + g.spacing() && x < 1.0 - r - g.spacing()) CHECK(std::abs(ms[i] - saw[i]) <= 1e-10);
  }

  const Grid g2 = make_grid(2, 64, 1.0);
  const auto saw2 = testutil::centered_affine(g2, 0.3, 1.5, -2.0);
  const auto ms2 = mollify(saw2, Mollifier{0.1});
  CHECK(std::abs(ms2.at({32, 32}) - saw2.at({32, 32})) <= 1e-10);
  CHECK(std::abs(ms2.at({20, 40}) - saw2.at({20, 40})) <= 1e-10);
}

TEST_CASE("mollify damps a cosine by the kernel's Fourier coefficient") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, dim == 1 ? 256 : 64, 1.0);
    const double r = 0.125;
    const auto f = sample(g, [](const Point& x) { return std::cos(2.0 * std::numbers::pi * x[0]); });
    const auto mf = mollify(f, Mollifier{r});
    double coef = 0.0;
    for (const auto& [d, w] : oracle_kernel(g, r)) coef += w * std::cos(2.0 * std::numbers::pi * d.d0 * g.spacing());
    CHECK(coef > 0.0);
    CHECK(coef < 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(mf[i] - coef * f[i]) <= 1e-12);
  }
}

TEST_CASE("mollify is linear, translation equivariant and mean preserving") {
  const Grid g = make_grid(2, 32, 1.0);
  const auto f = testutil::band_limited(g, 5, 1);
  const auto h = testutil::band_limited(g, 5, 2);
  const Mollifier m{0.15};
  const auto lhs = mollify(testutil::add(testutil::scaled(f, 2.0), testutil::scaled(h, -0.5)), m);
  const auto rhs = testutil::add(testutil::scaled(mollify(f, m), 2.0), testutil::scaled(mollify(h, m), -0.5));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12);

  CHECK(max_abs_diff(mollify(testutil::shift_one(f), m), testutil::shift_one(mollify(f, m))) <= 1e-12);

  double s0 = 0.0, s1 = 0.0;
  const auto mf = mollify(f, m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    s0 += f[i];
    s1 += mf[i];
  }
  double scale = 0.0;
  for (double v : f.values()) scale += std::abs(v);
  CHECK(std::abs(s0 - s1) <= 1e-10 * scale);

  const auto lin_b = ball_mean(testutil::add(f, h), {{3, 4}, 0.2}).mean;
  CHECK(std::abs(lin_b - ball_mean(f, {{3, 4}, 0.2}).mean - ball_mean(h, {{3, 4}, 0.2}).mean) <= 1e-12);
  CHECK(ball_mean(testutil::shift_one(f), {{4, 4}, 0.2}).mean == ball_mean(f, {{3, 4}, 0.2}).mean);
}

TEST_CASE("mollifier scale limits") {
  const Grid g = make_grid(1, 64, 1.0);
  const auto f = sample(g, [](const Point&) { return 1.0; });
  CHECK_THROWS_AS(mollify(f, Mollifier{1.5 * g.spacing()}), InvalidArgument);
  CHECK_NOTHROW(mollify(f, Mollifier{2.0 * g.spacing()}));
  CHECK(bump_profile(1.0) == 0.0);
  CHECK(bump_profile(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(bump_profile(0.5) == bump_profile(-0.5));
}

TEST_CASE("bump profile integrates to its analytic mass under the sampled rule") {
  // On a fine lattice the renormalization factor is the trapezoid sum, which is
  // spectrally accurate for the bump: check it against adaptive quadrature.
  const Grid g = make_grid(1, 4096, 1.0);
  const double r = 0.25;
  double sum = 0.0;
  for (int d = -1024; d <= 1024; ++d) sum += bump_profile(d * g.spacing() / r) * g.spacing() / r;
  // int_{-1}^{1} exp(-1/(1-s^2)) ds
  constexpr double mass = 0.44399381616807943;
  CHECK(std::abs(sum - mass) <= 1e-10);
}

TEST_CASE("mollified jet: affine exactness and spectral cross-check") {
  const Grid g = make_grid(1, 1024, 1.0);
  const auto saw = sample(g, [](const Point& x) { return -0.7 + 2.5 * x[0]; });
  const auto jet = mollified_jet(saw, Mollifier{0.04});
  for (std::size_t i = 100; i < 900; ++i) {
    CHECK(std::abs(jet.gradient[0][i] - 2.5) <= 1e-10);
    CHECK(std::abs(jet.value[i] - saw[i]) <= 1e-10);
  }

  // The two discretizations of grad(f * psi_r) converge spectrally in r/h.
  const Mollifier m{0.125};
  const auto f1 = testutil::band_limited(g, 3, 9);
  const auto jet1 = mollified_jet(f1, m);
  const auto grad1 = spectral_gradient(mollify(f1, m));
  CHECK(max_abs_diff(jet1.gradient[0], grad1[0]) <= 1e-10 * testutil::max_abs(grad1[0]));

  const Grid g2 = make_grid(2, 256, 1.0);
  const auto f = testutil::band_limited(g2, 3, 9);
  const auto jet2 = mollified_jet(f, m);
  const auto grad = spectral_gradient(mollify(f, m));
  const double scale = testutil::max_abs(grad[0]);
  CHECK(max_abs_diff(jet2.gradient[0], grad[0]) <= 1e-6 * scale);
  CHECK(max_abs_diff(jet2.gradient[1], grad[1]) <= 1e-6 * testutil::max_abs(grad[1]));
}
