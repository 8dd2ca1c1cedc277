#pragma once

// Uniform periodic grids, sampled fields, ball windows and mollification.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ialpha {

/// Torus [0, period)^dim sampled with n_per_axis points per axis.
struct Grid {
  int dim = 1;
  int n_per_axis = 8;
  double period = 1.0;

  double spacing() const { return period / n_per_axis; }
  std::size_t size() const {
    const auto n = static_cast<std::size_t>(n_per_axis);
    return dim == 1 ? n : n * n;
  }
  bool operator==(const Grid&) const = default;
};

/// Throws InvalidArgument unless dim is 1 or 2, n is a power of two >= 8 and
/// period > 0.
Grid make_grid(int dim, int n_per_axis, double period);

/// Multi-index / coordinates. The second component is unused (zero) in 1-d.
using Index = std::array<int, 2>;
using Point = std::array<double, 2>;

std::size_t flat_index(const Grid& grid, Index index);
Index grid_index(const Grid& grid, std::size_t flat);
Point coordinates(const Grid& grid, std::size_t flat);

/// Immutable real field on a grid, row-major (first axis slowest).
class SampledField {
 public:
  /// Throws InvalidArgument on a length mismatch and NumericError on a
  /// non-finite value.
  SampledField(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double at(Index index) const { return values_[flat_index(grid_, index)]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// values[i] = fn(coordinates of point i). A non-finite evaluation throws
/// NumericError naming the grid point.
SampledField sample(const Grid& grid, const std::function<double(const Point&)>& fn);

/// Open ball {y : |x - y|_periodic < radius} around a grid point.
struct BallWindow {
  Index center{0, 0};
  double radius = 0.0;
};

/// Requires spacing <= radius <= period / 4 and an in-range center.
void validate_window(const Grid& grid, const BallWindow& window);

struct BallMean {
  double mean = 0.0;
  std::size_t count = 0;
};

BallMean ball_mean(const SampledField& field, const BallWindow& window);

/// Standard bump exp(-1/(1-|x|^2)) on the unit ball, rescaled to radius
/// `scale`. Sampled kernels are renormalized to unit sum on the grid.
struct Mollifier {
  double scale = 0.0;
  static constexpr std::string_view profile = "standard_bump";
};

/// Unnormalized radial profile exp(-1/(1-s^2)) for s < 1, else 0.
double bump_profile(double s);

/// Periodic convolution with the sampled, renormalized kernel.
/// Requires moll.scale >= 2 * spacing.
SampledField mollify(const SampledField& field, const Mollifier& moll);

/// f * psi_r together with its gradient. The gradient is f convolved with the
/// sampled kernel gradient, rescaled per axis so that -sum_d d_a g_a(d) = 1;
/// the jet of an affine function is then exact wherever the kernel support
/// avoids a wrap discontinuity.
struct MollifiedJet {
  SampledField value;
  std::vector<SampledField> gradient;  // one field per axis
};

MollifiedJet mollified_jet(const SampledField& field, const Mollifier& moll);

/// Lattice offset d (in grid cells) with physical length |d| * spacing.
struct Offset {
  int d0 = 0;
  int d1 = 0;
  double distance = 0.0;
};

/// Offsets with distance < radius, lexicographic order.
std::vector<Offset> ball_offsets(const Grid& grid, double radius);
/// Offsets with inner <= distance <= outer, lexicographic order.
std::vector<Offset> annulus_offsets(const Grid& grid, double inner, double outer);

/// Flat index of (point + offset) with periodic wrap.
inline std::size_t shifted(const Grid& grid, std::size_t flat, int d0, int d1) {
  const int n = grid.n_per_axis;
  const int mask = n - 1;
  if (grid.dim == 1) {
    return static_cast<std::size_t>((static_cast<int>(flat) + d0) & mask);
  }
  const int i0 = static_cast<int>(flat) / n;
  const int i1 = static_cast<int>(flat) - i0 * n;
  return static_cast<std::size_t>(((i0 + d0) & mask) * n + ((i1 + d1) & mask));
}

inline std::size_t shifted(const Grid& grid, std::size_t flat, const Offset& d) {
  return shifted(grid, flat, d.d0, d.d1);
}

/// Periodic distance between two grid points.
double periodic_distance(const Grid& grid, Index a, Index b);

/// All grid points whose every coordinate index is a multiple of stride.
std::vector<std::size_t> strided_centers(const Grid& grid, int stride);

}  // namespace ialpha
