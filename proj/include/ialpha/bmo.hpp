#pragma once

// BMO norm, Hoelder seminorm, Strichartz difference functionals and the
// tempered-growth diagnostic. All suprema are maxima over declared finite
// families and are reported as lower bounds.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ialpha/field.hpp"

namespace ialpha {

/// Windows of the given radii centered at every stride-th grid point.
std::vector<BallWindow> window_family(const Grid& grid, std::span<const double> radii,
                                      int center_stride);

struct OscillationWindow {
  std::size_t center = 0;
  double radius = 0.0;
  double oscillation = 0.0;
};

struct OscillationReport {
  std::vector<OscillationWindow> per_window;
  double norm = 0.0;
  std::size_t argmax = 0;
  bool lower_bound = true;
};

/// Mean oscillation avg |f - <f>_B| per window; norm is the maximum.
OscillationReport bmo_norm(const SampledField& field, std::span<const BallWindow> windows);

/// max |f(x) - f(y)| / |x - y|^alpha over x on the stride sub-grid and
/// 0 < |x - y|_periodic <= period/4. alpha in (0, 1].
double holder_seminorm(const SampledField& field, double alpha, int center_stride = 1);

enum class DifferenceOrder { first_difference, second_difference };
std::string_view to_string(DifferenceOrder order);

/// Axis-aligned periodic cube of side_cells * spacing centered at a grid point;
/// it covers offsets [-side_cells/2, side_cells/2) on each axis.
struct Cube {
  Index center{0, 0};
  int side_cells = 4;
};

/// Cubes of sides top, top/2, ... >= min_side (in cells) centered on the stride
/// sub-grid.
std::vector<Cube> cube_family(const Grid& grid, int top_side_cells, int min_side_cells,
                              int center_stride);

struct StrichartzEntry {
  std::size_t center = 0;
  double side = 0.0;
  double value = 0.0;
};

struct StrichartzReport {
  double alpha = 0.0;
  DifferenceOrder order = DifferenceOrder::first_difference;
  std::vector<StrichartzEntry> per_cube;
  double B = 0.0;
  std::size_t argmax = 0;
  bool lower_bound = true;
};

/// sqrt( |Q|^{-1} h^{2d} sum_{x in Q} sum_{x+y in Q, y != 0}
///       |f(x+y) - f(x)|^2 / |y|^{d + 2 alpha} ), alpha in (0, 1).
StrichartzReport strichartz_first(const SampledField& field, double alpha,
                                  std::span<const Cube> cubes);

/// As strichartz_first with |2 f(x) - f(x+y) - f(x-y)|^2, alpha in (0, 2).
StrichartzReport strichartz_second(const SampledField& field, double alpha,
                                   std::span<const Cube> cubes);

/// Ball form of the second-difference functional:
///   R^{-d} h^{2d} sum_{x in B_{R/2}(z)} sum_{0 < |y| <= R/2}
///     |2 f(x) - f(x+y) - f(x-y)|^2 / |y|^{d + 2 alpha}
/// for every (z, R) in centers x radii. Values are squared (no root); B is the
/// maximum.
StrichartzReport strichartz_ball_second(const SampledField& field, double alpha,
                                        const std::vector<std::size_t>& centers,
                                        std::span<const double> radii);

/// Function on R^d with a growth bound |f(x)| <= constant * (1 + |x|)^exponent.
struct GrowthFunction {
  int dim = 1;
  std::function<double(const Point&)> fn;
  double exponent = 0.0;
  double constant = 1.0;
};

struct TemperedGrowth {
  double truncated = 0.0;   // \int_{|x| <= M} |f| / (1 + |x|^{d+eps})
  double tail_bound = 0.0;  // upper bound on the |x| > M remainder
  bool finite = false;      // exponent < eps
};

/// Requires eps > 0 and cutoff >= 1. With p = d + eps, c = max(1, ((1+M)/M)^exponent)
/// and 1/(1+u) <= 1 - u + u^2, the tail bound is
///   constant * c * |S^{d-1}| * sum_{k=1..3} (-1)^{k+1} M^{exponent+d-kp} / (kp - exponent - d),
/// rounded up by a few ulps, infinite when exponent >= eps.
TemperedGrowth tempered_growth(const GrowthFunction& f, double eps, double cutoff);

}  // namespace ialpha
