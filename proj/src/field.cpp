#include "ialpha/field.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fft.hpp"
#include "ialpha/error.hpp"

namespace ialpha {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string describe(const Grid& grid, std::size_t flat) {
  const Index idx = grid_index(grid, flat);
  const Point x = coordinates(grid, flat);
  std::ostringstream os;
  if (grid.dim == 1) {
    os << "grid point " << idx[0] << " (x=" << x[0] << ")";
  } else {
    os << "grid point (" << idx[0] << "," << idx[1] << ") (x=" << x[0] << ",y=" << x[1]
       << ")";
  }
  return os.str();
}

template <typename Accept>
std::vector<Offset> lattice_offsets(const Grid& grid, double outer, Accept accept) {
  const double h = grid.spacing();
  const int reach = static_cast<int>(std::ceil(outer / h));
  std::vector<Offset> out;
  if (grid.dim == 1) {
    for (int d0 = -reach; d0 <= reach; ++d0) {
      const double dist = std::abs(d0) * h;
      if (accept(dist)) out.push_back({d0, 0, dist});
    }
  } else {
    for (int d0 = -reach; d0 <= reach; ++d0) {
      for (int d1 = -reach; d1 <= reach; ++d1) {
        const double dist = h * std::sqrt(static_cast<double>(d0 * d0 + d1 * d1));
        if (accept(dist)) out.push_back({d0, d1, dist});
      }
    }
  }
  return out;
}

void check_scale(const Grid& grid, const Mollifier& moll) {
  if (!(moll.scale >= 2.0 * grid.spacing())) {
    throw InvalidArgument("mollifier scale " + std::to_string(moll.scale) +
                          " is below twice the grid spacing");
  }
  if (moll.scale > grid.period / 4.0) {
    throw InvalidArgument("mollifier scale exceeds period/4");
  }
}

}  // namespace

Grid make_grid(int dim, int n_per_axis, double period) {
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (n_per_axis < 8 || !is_power_of_two(n_per_axis)) {
    throw InvalidArgument("samples per axis must be a power of two >= 8, got " +
                          std::to_string(n_per_axis));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidArgument("period must be positive");
  }
  return Grid{dim, n_per_axis, period};
}

std::size_t flat_index(const Grid& grid, Index index) {
  const int n = grid.n_per_axis;
  const int i0 = ((index[0] % n) + n) % n;
  if (grid.dim == 1) return static_cast<std::size_t>(i0);
  const int i1 = ((index[1] % n) + n) % n;
  return static_cast<std::size_t>(i0) * static_cast<std::size_t>(n) +
         static_cast<std::size_t>(i1);
}

Index grid_index(const Grid& grid, std::size_t flat) {
  if (grid.dim == 1) return {static_cast<int>(flat), 0};
  const auto n = static_cast<std::size_t>(grid.n_per_axis);
  return {static_cast<int>(flat / n), static_cast<int>(flat % n)};
}

Point coordinates(const Grid& grid, std::size_t flat) {
  const Index idx = grid_index(grid, flat);
  const double h = grid.spacing();
  if (grid.dim == 1) return {idx[0] * h, 0.0};
  return {idx[0] * h, idx[1] * h};
}

SampledField::SampledField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " values, grid expects " + std::to_string(grid_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericError("non-finite value at " + describe(grid_, i));
    }
  }
}

SampledField sample(const Grid& grid, const std::function<double(const Point&)>& fn) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = fn(coordinates(grid, i));
    if (!std::isfinite(v)) {
      throw NumericError("function is not finite at " + describe(grid, i));
    }
    values[i] = v;
  }
  return SampledField(grid, std::move(values));
}

void validate_window(const Grid& grid, const BallWindow& window) {
  const double h = grid.spacing();
  if (!(window.radius >= h)) {
    throw InvalidArgument("window radius " + std::to_string(window.radius) +
                          " is below the grid spacing");
  }
  if (window.radius > grid.period / 4.0) {
    throw InvalidArgument("window radius " + std::to_string(window.radius) +
                          " exceeds period/4");
  }
  const int n = grid.n_per_axis;
  const int axes = grid.dim;
  for (int a = 0; a < axes; ++a) {
    if (window.center[a] < 0 || window.center[a] >= n) {
      throw InvalidArgument("window center index out of range");
    }
  }
}

double periodic_distance(const Grid& grid, Index a, Index b) {
  const int n = grid.n_per_axis;
  double sum = 0.0;
  for (int ax = 0; ax < grid.dim; ++ax) {
    int d = ((a[ax] - b[ax]) % n + n) % n;
    if (d > n / 2) d = n - d;
    sum += static_cast<double>(d) * d;
  }
  return grid.spacing() * std::sqrt(sum);
}

std::vector<std::size_t> strided_centers(const Grid& grid, int stride) {
  if (stride < 1) throw InvalidArgument("center stride must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index idx = grid_index(grid, i);
    if (idx[0] % stride == 0 && idx[1] % stride == 0) out.push_back(i);
  }
  return out;
}

std::vector<Offset> ball_offsets(const Grid& grid, double radius) {
  return lattice_offsets(grid, radius, [radius](double d) { return d < radius; });
}

std::vector<Offset> annulus_offsets(const Grid& grid, double inner, double outer) {
  return lattice_offsets(grid, outer,
                         [inner, outer](double d) { return d >= inner && d <= outer; });
}

BallMean ball_mean(const SampledField& field, const BallWindow& window) {
  const Grid& grid = field.grid();
  validate_window(grid, window);
  const auto offsets = ball_offsets(grid, window.radius);
  const std::size_t c = flat_index(grid, window.center);
  const auto v = field.values();
  // Summing deviations from the center value keeps constants exact.
  const double pivot = v[c];
  double sum = 0.0;
  for (const auto& d : offsets) sum += v[shifted(grid, c, d)] - pivot;
  return {pivot + sum / static_cast<double>(offsets.size()), offsets.size()};
}

double bump_profile(double s) {
  if (s >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

SampledField mollify(const SampledField& field, const Mollifier& moll) {
  const Grid& grid = field.grid();
  check_scale(grid, moll);
  const auto offsets = ball_offsets(grid, moll.scale);
  std::vector<double> weights(offsets.size());
  double total = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    weights[i] = bump_profile(offsets[i].distance / moll.scale);
    total += weights[i];
  }
  for (double& w : weights) w /= total;

  const auto v = field.values();
  const double pivot = v[0];
  std::vector<double> centered(v.begin(), v.end());
  for (double& x : centered) x -= pivot;
  auto out = detail::convolve(grid, centered, offsets, weights);
  for (double& x : out) x += pivot;
  return SampledField(grid, std::move(out));
}

MollifiedJet mollified_jet(const SampledField& field, const Mollifier& moll) {
  const Grid& grid = field.grid();
  check_scale(grid, moll);
  const double h = grid.spacing();
  const auto offsets = ball_offsets(grid, moll.scale);

  std::vector<double> weights(offsets.size());
  std::vector<double> slope_profile(offsets.size());
  double total = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const double s = offsets[i].distance / moll.scale;
    weights[i] = bump_profile(s);
    total += weights[i];
    // |grad psi| / |x| up to a positive constant.
    slope_profile[i] = s < 1.0 ? weights[i] / ((1.0 - s * s) * (1.0 - s * s)) : 0.0;
  }
  for (double& w : weights) w /= total;

  const auto v = field.values();
  const double pivot = v[0];
  std::vector<double> centered(v.begin(), v.end());
  for (double& x : centered) x -= pivot;

  auto value = detail::convolve(grid, centered, offsets, weights);
  for (double& x : value) x += pivot;

  std::vector<SampledField> gradient;
  for (int axis = 0; axis < grid.dim; ++axis) {
    std::vector<double> g(offsets.size());
    double moment = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const double da = h * (axis == 0 ? offsets[i].d0 : offsets[i].d1);
      g[i] = -da * slope_profile[i];
      moment += da * da * slope_profile[i];
    }
    for (double& x : g) x /= moment;
    gradient.emplace_back(grid, detail::convolve(grid, centered, offsets, g));
  }
  return {SampledField(grid, std::move(value)), std::move(gradient)};
}

}  // namespace ialpha
