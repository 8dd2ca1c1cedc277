#include "ialpha/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ialpha/error.hpp"

namespace ialpha {

namespace {

struct Radius {
  double radius;
  std::vector<Offset> ball;
};

const std::vector<Offset>& cached_ball(std::vector<Radius>& cache, const Grid& grid,
                                       double radius) {
  for (const auto& c : cache) {
    if (c.radius == radius) return c.ball;
  }
  cache.push_back({radius, ball_offsets(grid, radius)});
  return cache.back().ball;
}

double mean_oscillation(const Grid& grid, std::span<const double> v,
                        const std::vector<Offset>& ball, std::size_t c) {
  const double pivot = v[c];
  double sum = 0.0;
  for (const auto& d : ball) sum += v[shifted(grid, c, d)] - pivot;
  const double count = static_cast<double>(ball.size());
  const double mean = sum / count;
  double osc = 0.0;
  for (const auto& d : ball) osc += std::abs((v[shifted(grid, c, d)] - pivot) - mean);
  return osc / count;
}

void check_cube(const Grid& grid, const Cube& q) {
  if (q.side_cells < 4) {
    throw InvalidArgument("cube side of " + std::to_string(q.side_cells) +
                          " cells is below four spacings");
  }
  if (2 * q.side_cells > grid.n_per_axis) {
    throw InvalidArgument("cube side of " + std::to_string(q.side_cells) +
                          " cells exceeds period/2");
  }
  for (int a = 0; a < grid.dim; ++a) {
    if (q.center[a] < 0 || q.center[a] >= grid.n_per_axis) {
      throw InvalidArgument("cube center index out of range");
    }
  }
}

// Lattice points of the cube as offsets from its center.
std::vector<std::array<int, 2>> cube_points(const Grid& grid, int m) {
  std::vector<std::array<int, 2>> pts;
  const int lo = -m / 2;
  const int hi = lo + m;
  if (grid.dim == 1) {
    for (int a = lo; a < hi; ++a) pts.push_back({a, 0});
  } else {
    for (int a = lo; a < hi; ++a) {
      for (int b = lo; b < hi; ++b) pts.push_back({a, b});
    }
  }
  return pts;
}

// weight[(dy0 + m) * (2m+1) + (dy1 + m)] = |y|^{-(d + 2 alpha)}, 0 at y = 0.
std::vector<double> lag_weights(const Grid& grid, int m, double alpha) {
  const double h = grid.spacing();
  const int w = 2 * m + 1;
  const int rows = grid.dim == 1 ? 1 : w;
  std::vector<double> out(static_cast<std::size_t>(w) * rows, 0.0);
  const double power = grid.dim + 2.0 * alpha;
  for (int a = -m; a <= m; ++a) {
    for (int b = (grid.dim == 1 ? 0 : -m); b <= (grid.dim == 1 ? 0 : m); ++b) {
      if (a == 0 && b == 0) continue;
      const double dist = h * std::sqrt(static_cast<double>(a) * a + static_cast<double>(b) * b);
      const std::size_t slot = grid.dim == 1
                                   ? static_cast<std::size_t>(a + m)
                                   : static_cast<std::size_t>((a + m) * w + (b + m));
      out[slot] = std::pow(dist, -power);
    }
  }
  return out;
}

template <typename Difference>
StrichartzReport strichartz(const SampledField& field, double alpha, std::span<const Cube> cubes,
                            DifferenceOrder order, Difference diff) {
  const Grid& grid = field.grid();
  if (cubes.empty()) throw InvalidArgument("cube family is empty");
  for (const auto& q : cubes) check_cube(grid, q);

  StrichartzReport report;
  report.alpha = alpha;
  report.order = order;
  const auto v = field.values();
  const double h = grid.spacing();
  const double cell = std::pow(h, grid.dim);

  int cached_side = -1;
  std::vector<std::array<int, 2>> pts;
  std::vector<double> weights;
  for (const auto& q : cubes) {
    const int m = q.side_cells;
    if (m != cached_side) {
      pts = cube_points(grid, m);
      weights = lag_weights(grid, m, alpha);
      cached_side = m;
    }
    const std::size_t c = flat_index(grid, q.center);
    const int w = 2 * m + 1;
    double sum = 0.0;
    for (const auto& x : pts) {
      const std::size_t fx = shifted(grid, c, x[0], x[1]);
      for (const auto& xy : pts) {
        const int dy0 = xy[0] - x[0];
        const int dy1 = xy[1] - x[1];
        if (dy0 == 0 && dy1 == 0) continue;
        const std::size_t slot = grid.dim == 1
                                     ? static_cast<std::size_t>(dy0 + m)
                                     : static_cast<std::size_t>((dy0 + m) * w + (dy1 + m));
        const double e = diff(v, fx, dy0, dy1);
        sum += e * e * weights[slot];
      }
    }
    const double volume = std::pow(m * h, grid.dim);
    report.per_cube.push_back({c, m * h, std::sqrt(cell * cell * sum / volume)});
  }
  for (std::size_t i = 0; i < report.per_cube.size(); ++i) {
    if (i == 0 || report.per_cube[i].value > report.B) {
      report.B = report.per_cube[i].value;
      report.argmax = i;
    }
  }
  return report;
}

void check_strichartz_alpha(double alpha, double upper) {
  if (!(alpha > 0.0 && alpha < upper)) {
    throw InvalidArgument("Strichartz functional requires alpha in (0," +
                          std::to_string(static_cast<int>(upper)) + "), got " +
                          std::to_string(alpha));
  }
}

using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;

// Geometric panels [0,1], [1,4], [4,16], ... clipped at M.
template <typename F>
double radial_integral(F&& g, double M) {
  double total = Gk::integrate(g, 0.0, std::min(1.0, M), 12, 1e-13);
  for (double a = 1.0; a < M; a *= 4.0) {
    total += Gk::integrate(g, a, std::min(4.0 * a, M), 12, 1e-13);
  }
  return total;
}

}  // namespace

std::vector<BallWindow> window_family(const Grid& grid, std::span<const double> radii,
                                      int center_stride) {
  std::vector<BallWindow> out;
  const auto centers = strided_centers(grid, center_stride);
  for (double r : radii) {
    for (std::size_t c : centers) out.push_back({grid_index(grid, c), r});
  }
  return out;
}

OscillationReport bmo_norm(const SampledField& field, std::span<const BallWindow> windows) {
  if (windows.empty()) throw InvalidArgument("BMO window family is empty");
  const Grid& grid = field.grid();
  for (const auto& w : windows) validate_window(grid, w);

  OscillationReport report;
  report.per_window.reserve(windows.size());
  std::vector<Radius> cache;
  const auto v = field.values();
  for (const auto& w : windows) {
    const auto& ball = cached_ball(cache, grid, w.radius);
    const std::size_t c = flat_index(grid, w.center);
    report.per_window.push_back({c, w.radius, mean_oscillation(grid, v, ball, c)});
  }
  for (std::size_t i = 0; i < report.per_window.size(); ++i) {
    if (i == 0 || report.per_window[i].oscillation > report.norm) {
      report.norm = report.per_window[i].oscillation;
      report.argmax = i;
    }
  }
  return report;
}

double holder_seminorm(const SampledField& field, double alpha, int center_stride) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("Hoelder exponent must lie in (0,1], got " + std::to_string(alpha));
  }
  const Grid& grid = field.grid();
  const auto centers = strided_centers(grid, center_stride);
  auto offsets = annulus_offsets(grid, grid.spacing() * 0.5, grid.period / 4.0);
  if (center_stride == 1) {
    // Every pair is seen from both ends, so half the offsets suffice.
    std::erase_if(offsets, [](const Offset& d) { return d.d0 < 0 || (d.d0 == 0 && d.d1 < 0); });
  }
  std::vector<double> weights;
  weights.reserve(offsets.size());
  for (const auto& d : offsets) weights.push_back(std::pow(d.distance, -alpha));

  const auto v = field.values();
  double best = 0.0;
  for (std::size_t c : centers) {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      best = std::max(best, std::abs(v[shifted(grid, c, offsets[i])] - v[c]) * weights[i]);
    }
  }
  return best;
}

std::string_view to_string(DifferenceOrder order) {
  return order == DifferenceOrder::first_difference ? "first_difference" : "second_difference";
}

std::vector<Cube> cube_family(const Grid& grid, int top_side_cells, int min_side_cells,
                              int center_stride) {
  if (min_side_cells < 4 || top_side_cells < min_side_cells) {
    throw InvalidArgument("cube family needs 4 <= min side <= top side");
  }
  std::vector<Cube> out;
  const auto centers = strided_centers(grid, center_stride);
  for (int m = top_side_cells; m >= min_side_cells; m /= 2) {
    for (std::size_t c : centers) out.push_back({grid_index(grid, c), m});
  }
  return out;
}

StrichartzReport strichartz_first(const SampledField& field, double alpha,
                                  std::span<const Cube> cubes) {
  check_strichartz_alpha(alpha, 1.0);
  const Grid& grid = field.grid();
  return strichartz(field, alpha, cubes, DifferenceOrder::first_difference,
                    [&grid](std::span<const double> v, std::size_t x, int d0, int d1) {
                      return v[shifted(grid, x, d0, d1)] - v[x];
                    });
}

StrichartzReport strichartz_second(const SampledField& field, double alpha,
                                   std::span<const Cube> cubes) {
  check_strichartz_alpha(alpha, 2.0);
  const Grid& grid = field.grid();
  return strichartz(field, alpha, cubes, DifferenceOrder::second_difference,
                    [&grid](std::span<const double> v, std::size_t x, int d0, int d1) {
                      return (v[x] - v[shifted(grid, x, d0, d1)]) +
                             (v[x] - v[shifted(grid, x, -d0, -d1)]);
                    });
}

StrichartzReport strichartz_ball_second(const SampledField& field, double alpha,
                                        const std::vector<std::size_t>& centers,
                                        std::span<const double> radii) {
  check_strichartz_alpha(alpha, 2.0);
  const Grid& grid = field.grid();
  if (centers.empty() || radii.empty()) throw InvalidArgument("ball family is empty");
  for (std::size_t z : centers) {
    if (z >= grid.size()) throw InvalidArgument("center index out of range");
  }
  const double h = grid.spacing();
  const double cell = std::pow(h, grid.dim);
  const auto v = field.values();

  StrichartzReport report;
  report.alpha = alpha;
  report.order = DifferenceOrder::second_difference;
  for (double R : radii) {
    if (!(R >= 2.0 * h) || R > grid.period / 4.0 * (1.0 + 1e-12)) {
      throw InvalidArgument("ball radius " + std::to_string(R) +
                            " must lie in [2 spacings, period/4]");
    }
    const auto xs = ball_offsets(grid, 0.5 * R);
    const auto ys = annulus_offsets(grid, 0.5 * h, 0.5 * R);
    std::vector<double> weights;
    weights.reserve(ys.size());
    for (const auto& y : ys) weights.push_back(std::pow(y.distance, -(grid.dim + 2.0 * alpha)));

    // Second differences are even in y, so per-point sums are shared across centers.
    std::vector<double> local(grid.size(), 0.0);
    for (std::size_t x = 0; x < grid.size(); ++x) {
      double s = 0.0;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const double e = (v[x] - v[shifted(grid, x, ys[i])]) +
                         (v[x] - v[shifted(grid, x, -ys[i].d0, -ys[i].d1)]);
        s += e * e * weights[i];
      }
      local[x] = s;
    }
    for (std::size_t z : centers) {
      double sum = 0.0;
      for (const auto& d : xs) sum += local[shifted(grid, z, d)];
      report.per_cube.push_back({z, R, cell * cell * sum / std::pow(R, grid.dim)});
    }
  }
  for (std::size_t i = 0; i < report.per_cube.size(); ++i) {
    if (i == 0 || report.per_cube[i].value > report.B) {
      report.B = report.per_cube[i].value;
      report.argmax = i;
    }
  }
  return report;
}

TemperedGrowth tempered_growth(const GrowthFunction& f, double eps, double cutoff) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(cutoff >= 1.0)) throw InvalidArgument("cutoff must be at least 1");
  if (f.dim != 1 && f.dim != 2) throw InvalidArgument("growth function dimension must be 1 or 2");
  if (!f.fn) throw InvalidArgument("growth function is empty");

  const int d = f.dim;
  const double p = d + eps;
  TemperedGrowth out;
  out.finite = f.exponent < eps;

  if (d == 1) {
    out.truncated = radial_integral(
        [&](double r) {
          return (std::abs(f.fn({r, 0.0})) + std::abs(f.fn({-r, 0.0}))) / (1.0 + std::pow(r, p));
        },
        cutoff);
  } else {
    out.truncated = radial_integral(
        [&](double r) {
          const double ring = Gk::integrate(
              [&](double t) { return std::abs(f.fn({r * std::cos(t), r * std::sin(t)})); }, 0.0,
              2.0 * std::numbers::pi, 8, 1e-12);
          return r * ring / (1.0 + std::pow(r, p));
        },
        cutoff);
  }
  if (!std::isfinite(out.truncated)) throw NumericError("tempered-growth quadrature diverged");

  if (!out.finite) {
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  const double M = cutoff;
  const double g = f.exponent;
  const double sphere = d == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double c = std::max(1.0, std::pow((1.0 + M) / M, g));
  double series = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double sign = k % 2 == 1 ? 1.0 : -1.0;
    series += sign * std::pow(M, g + d - k * p) / (k * p - g - d);
  }
  // The bound can agree with the true tail to the last bit; round upward.
  out.tail_bound = f.constant * c * sphere * series * (1.0 + 16.0 * std::numeric_limits<double>::epsilon());
  return out;
}

}  // namespace ialpha
