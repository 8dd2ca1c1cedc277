#include "ialpha/carleson.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ialpha/bmo.hpp"
#include "ialpha/error.hpp"
#include "ialpha/spectral.hpp"

namespace ialpha {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidArgument("square function requires alpha in (0,2), got " +
                          std::to_string(alpha));
  }
}

double cell_volume(const Grid& grid) {
  return std::pow(grid.spacing(), grid.dim);
}

// weighted[level][x] = h^d (nu(x, r_j) / r_j^{alpha-1})^2 ln 2
std::vector<std::vector<double>> weighted_levels(const CoefficientMatrix& m, double alpha) {
  const double dv = cell_volume(m.grid);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.ladder.levels));
  for (int j = 0; j < m.ladder.levels; ++j) {
    const double scale = std::pow(m.ladder.radius(j), alpha - 1.0);
    auto& row = out[static_cast<std::size_t>(j)];
    row.resize(m.grid.size());
    for (std::size_t x = 0; x < row.size(); ++x) {
      const double q = m.at(x, j) / scale;
      row[x] = dv * q * q * ScaleLadder::log_weight;
    }
  }
  return out;
}

// cumulative[j][x] = sum over levels k >= j (radii <= r_j) of weighted[k][x]
std::vector<std::vector<double>> cumulative_from(std::vector<std::vector<double>> w) {
  for (std::size_t j = w.size(); j-- > 1;) {
    for (std::size_t x = 0; x < w[j].size(); ++x) w[j - 1][x] += w[j][x];
  }
  return w;
}

double ball_sum(const Grid& grid, std::span<const double> values,
                const std::vector<Offset>& ball, std::size_t z) {
  double sum = 0.0;
  for (const auto& d : ball) sum += values[shifted(grid, z, d)];
  return sum;
}

void check_matrix(const CoefficientMatrix& m) {
  if (m.values.size() != m.grid.size() * static_cast<std::size_t>(m.ladder.levels)) {
    throw InvalidArgument("coefficient matrix does not cover every grid center");
  }
}

}  // namespace

CoefficientKind standard_kind(double alpha) {
  return alpha < 1.0 ? CoefficientKind::nu0 : CoefficientKind::nu1;
}

SquareFunctionValue square_function_integral(const CoefficientMatrix& matrix, double alpha,
                                             std::size_t z, double R) {
  check_alpha(alpha);
  check_matrix(matrix);
  const int top = matrix.ladder.level_of(R);
  if (top < 0) throw InvalidArgument("radius " + std::to_string(R) + " is not on the ladder");
  if (z >= matrix.grid.size()) throw InvalidArgument("center index out of range");

  const Grid& grid = matrix.grid;
  const double dv = cell_volume(grid);
  const auto ball = ball_offsets(grid, R);
  double integral = 0.0;
  for (const auto& d : ball) {
    const std::size_t x = shifted(grid, z, d);
    double column = 0.0;
    for (int j = top; j < matrix.ladder.levels; ++j) {
      const double q = matrix.at(x, j) / std::pow(matrix.ladder.radius(j), alpha - 1.0);
      column += q * q;
    }
    integral += dv * column * ScaleLadder::log_weight;
  }
  return {integral, integral / std::pow(R, grid.dim)};
}

CarlesonReport carleson_constant(const CoefficientMatrix& matrix, double alpha,
                                 const std::vector<std::size_t>& centers,
                                 const std::vector<double>& tops) {
  check_alpha(alpha);
  check_matrix(matrix);
  if (centers.empty() || tops.empty()) {
    throw InvalidArgument("Carleson test family is empty");
  }
  const Grid& grid = matrix.grid;
  std::vector<int> top_levels;
  for (double R : tops) {
    const int j = matrix.ladder.level_of(R);
    if (j < 0) throw InvalidArgument("radius " + std::to_string(R) + " is not on the ladder");
    top_levels.push_back(j);
  }
  for (std::size_t z : centers) {
    if (z >= grid.size()) throw InvalidArgument("center index out of range");
  }

  CarlesonReport report;
  report.alpha = alpha;
  report.kind = matrix.kind;
  report.standard_pairing =
      order_of(matrix.kind) == (alpha < 1.0 ? 0 : 1) && matrix.kind != CoefficientKind::beta;
  report.grid = grid;
  report.ladder = matrix.ladder;
  report.floor_radius = matrix.ladder.radius(matrix.ladder.levels - 1);

  const auto cumulative = cumulative_from(weighted_levels(matrix, alpha));
  std::vector<std::vector<Offset>> balls;
  for (int j : top_levels) balls.push_back(ball_offsets(grid, matrix.ladder.radius(j)));

  report.per_window.reserve(centers.size() * tops.size());
  for (std::size_t z : centers) {
    for (std::size_t t = 0; t < top_levels.size(); ++t) {
      const int j = top_levels[t];
      const double R = matrix.ladder.radius(j);
      const double integral =
          ball_sum(grid, cumulative[static_cast<std::size_t>(j)], balls[t], z);
      report.per_window.push_back({z, R, integral, integral / std::pow(R, grid.dim)});
    }
  }
  for (std::size_t i = 0; i < report.per_window.size(); ++i) {
    if (report.per_window[i].normalized > report.constant || i == 0) {
      report.constant = report.per_window[i].normalized;
      report.argmax = i;
    }
  }
  return report;
}

double full_domain_square_integral(const CoefficientMatrix& matrix, double alpha) {
  check_alpha(alpha);
  check_matrix(matrix);
  const auto w = weighted_levels(matrix, alpha);
  double total = 0.0;
  for (const auto& row : w) {
    for (double v : row) total += v;
  }
  return total;
}

std::vector<double> dyadic_radii(const Grid& grid, double min_radius) {
  std::vector<double> out;
  for (double r = grid.period / 4.0; r >= min_radius * (1.0 - 1e-12); r *= 0.5) {
    out.push_back(r);
  }
  return out;
}

ComparabilityRecord comparability_experiment(const SampledField& field,
                                             const CoefficientMatrix& matrix, double alpha,
                                             const ExperimentOptions& options) {
  check_alpha(alpha);
  const Grid& grid = field.grid();
  if (!(matrix.grid == grid)) throw InvalidArgument("matrix grid differs from field grid");

  ComparabilityRecord rec;
  rec.alpha = alpha;
  rec.kind = matrix.kind;
  rec.ladder = matrix.ladder;

  const auto centers = strided_centers(grid, options.center_stride);
  const auto report = carleson_constant(matrix, alpha, centers, matrix.ladder.radii());
  rec.c_sq = report.constant;

  rec.bmo_radii = dyadic_radii(grid, options.bmo_min_radius_cells * grid.spacing());
  const auto windows = window_family(grid, rec.bmo_radii, options.bmo_center_stride);
  const auto osc = bmo_norm(fractional_derivative(field, alpha), windows);
  rec.bmo_sq = osc.norm * osc.norm;

  rec.ratio_defined = rec.bmo_sq > 0.0;
  rec.ratio = rec.ratio_defined ? rec.c_sq / rec.bmo_sq
                                : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

ComparabilityRecord comparability_experiment(const SampledField& field, double alpha,
                                             const ExperimentOptions& options) {
  check_alpha(alpha);
  const ScaleLadder ladder = options.ladder ? *options.ladder : default_ladder(field.grid());
  const auto matrix = coefficient_matrix(field, ladder, standard_kind(alpha));
  return comparability_experiment(field, matrix, alpha, options);
}

}  // namespace ialpha
