#include "ialpha/coeffs.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "ialpha/error.hpp"

namespace ialpha {

namespace {

struct Stencil {
  std::vector<Offset> offsets;
  std::vector<std::array<double, 2>> centered;  // physical offset minus mean offset
  std::array<double, 4> inverse_moment{};       // row-major 2x2 (1-d uses [0])
  bool singular = false;
};

Stencil ball_stencil(const Grid& grid, double radius) {
  Stencil st;
  st.offsets = ball_offsets(grid, radius);
  const double h = grid.spacing();
  const double count = static_cast<double>(st.offsets.size());
  double m0 = 0.0;
  double m1 = 0.0;
  for (const auto& d : st.offsets) {
    m0 += d.d0 * h;
    m1 += d.d1 * h;
  }
  m0 /= count;
  m1 /= count;
  double s00 = 0.0;
  double s01 = 0.0;
  double s11 = 0.0;
  st.centered.reserve(st.offsets.size());
  for (const auto& d : st.offsets) {
    const double a = d.d0 * h - m0;
    const double b = d.d1 * h - m1;
    st.centered.push_back({a, b});
    s00 += a * a;
    s01 += a * b;
    s11 += b * b;
  }
  if (grid.dim == 1) {
    st.singular = !(s00 > 0.0);
    if (!st.singular) st.inverse_moment[0] = 1.0 / s00;
  } else {
    const double det = s00 * s11 - s01 * s01;
    const double scale = (s00 + s11) * (s00 + s11);
    st.singular = !(det > 1e-12 * scale);
    if (!st.singular) {
      st.inverse_moment = {s11 / det, -s01 / det, -s01 / det, s00 / det};
    }
  }
  return st;
}

std::string window_name(const Grid& grid, std::size_t center, double radius) {
  const Index idx = grid_index(grid, center);
  std::ostringstream os;
  os << "window center=(" << idx[0];
  if (grid.dim == 2) os << "," << idx[1];
  os << ") radius=" << radius;
  return os.str();
}

double nu0_at(const Grid& grid, std::span<const double> v, const Stencil& st,
              std::size_t c, double r) {
  const double pivot = v[c];
  double sum = 0.0;
  for (const auto& d : st.offsets) sum += v[shifted(grid, c, d)] - pivot;
  const double count = static_cast<double>(st.offsets.size());
  const double mean = sum / count;
  double sq = 0.0;
  for (const auto& d : st.offsets) {
    const double e = (v[shifted(grid, c, d)] - pivot) - mean;
    sq += e * e;
  }
  return std::sqrt(sq / count) / r;
}

double nu1_at(const Grid& grid, std::span<const double> v, const Stencil& st,
              std::size_t c, double r) {
  if (st.singular) {
    throw NumericError("singular normal equations for " + window_name(grid, c, r));
  }
  const double pivot = v[c];
  const std::size_t count = st.offsets.size();
  double sum = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = v[shifted(grid, c, st.offsets[i])] - pivot;
    sum += e;
    x0 += st.centered[i][0] * e;
    x1 += st.centered[i][1] * e;
  }
  const double mean = sum / static_cast<double>(count);
  const auto& inv = st.inverse_moment;
  double b0 = 0.0;
  double b1 = 0.0;
  if (grid.dim == 1) {
    b0 = inv[0] * x0;
  } else {
    b0 = inv[0] * x0 + inv[1] * x1;
    b1 = inv[2] * x0 + inv[3] * x1;
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = (v[shifted(grid, c, st.offsets[i])] - pivot) - mean -
                     b0 * st.centered[i][0] - b1 * st.centered[i][1];
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(count)) / r;
}

// Residual RMS of v(x + d) - base - g . d over the given offsets.
double jet_residual_at(const Grid& grid, std::span<const double> v,
                       std::span<const Offset> offsets, std::size_t c, double base,
                       double g0, double g1, double r) {
  const double h = grid.spacing();
  double sq = 0.0;
  for (const auto& d : offsets) {
    const double e = v[shifted(grid, c, d)] - base - g0 * (d.d0 * h) - g1 * (d.d1 * h);
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(offsets.size())) / r;
}

void check_order(int order) {
  if (order != 0 && order != 1) throw InvalidArgument("coefficient order must be 0 or 1");
}

void check_annulus(const Grid& grid, std::span<const Offset> annulus, std::size_t c,
                   double r) {
  if (annulus.size() < static_cast<std::size_t>(2 * grid.dim)) {
    throw NumericError("annulus too small for " + window_name(grid, c, r));
  }
}

void check_jet(const SampledField& field, const MollifiedJet& jet) {
  if (!(jet.value.grid() == field.grid()) ||
      jet.gradient.size() != static_cast<std::size_t>(field.grid().dim)) {
    throw InvalidArgument("mollified jet does not match the field grid");
  }
}

double gradient_component(const MollifiedJet& jet, int axis, std::size_t c) {
  return axis < static_cast<int>(jet.gradient.size()) ? jet.gradient[axis][c] : 0.0;
}

}  // namespace

double ScaleLadder::radius(int level) const {
  return std::ldexp(top_radius, -level);
}

std::vector<double> ScaleLadder::radii() const {
  std::vector<double> out;
  for (int j = 0; j < levels; ++j) out.push_back(radius(j));
  return out;
}

int ScaleLadder::level_of(double r) const {
  for (int j = 0; j < levels; ++j) {
    if (std::abs(radius(j) - r) <= 1e-12 * radius(j)) return j;
  }
  return -1;
}

ScaleLadder make_ladder(const Grid& grid, double top_radius, int levels) {
  if (levels < 1) throw InvalidArgument("ladder needs at least one level");
  if (!(top_radius > 0.0) || top_radius > grid.period / 4.0 * (1.0 + 1e-12)) {
    throw InvalidArgument("ladder top radius must lie in (0, period/4]");
  }
  ScaleLadder ladder{top_radius, levels};
  if (ladder.radius(levels - 1) < 4.0 * grid.spacing() * (1.0 - 1e-12)) {
    throw InvalidArgument("smallest ladder radius " +
                          std::to_string(ladder.radius(levels - 1)) +
                          " is below four grid spacings");
  }
  return ladder;
}

ScaleLadder default_ladder(const Grid& grid) {
  const double top = grid.period / 4.0;
  int levels = 0;
  while (std::ldexp(top, -levels) >= 4.0 * grid.spacing() * (1.0 - 1e-12)) ++levels;
  return make_ladder(grid, top, levels);
}

std::string_view to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::nu0: return "nu0";
    case CoefficientKind::nu1: return "nu1";
    case CoefficientKind::nu0_bar: return "nu0_bar";
    case CoefficientKind::nu1_bar: return "nu1_bar";
    case CoefficientKind::nu0_tilde: return "nu0_tilde";
    case CoefficientKind::nu1_tilde: return "nu1_tilde";
    case CoefficientKind::beta: return "beta";
  }
  return "unknown";
}

CoefficientKind coefficient_kind_from_string(std::string_view name) {
  for (auto kind : {CoefficientKind::nu0, CoefficientKind::nu1, CoefficientKind::nu0_bar,
                    CoefficientKind::nu1_bar, CoefficientKind::nu0_tilde,
                    CoefficientKind::nu1_tilde, CoefficientKind::beta}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown coefficient kind '" + std::string(name) + "'");
}

int order_of(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::nu0:
    case CoefficientKind::nu0_bar:
    case CoefficientKind::nu0_tilde:
      return 0;
    default:
      return 1;
  }
}

double nu0(const SampledField& field, const BallWindow& window) {
  const Grid& grid = field.grid();
  validate_window(grid, window);
  const auto st = ball_stencil(grid, window.radius);
  return nu0_at(grid, field.values(), st, flat_index(grid, window.center), window.radius);
}

double nu1(const SampledField& field, const BallWindow& window) {
  const Grid& grid = field.grid();
  validate_window(grid, window);
  const auto st = ball_stencil(grid, window.radius);
  return nu1_at(grid, field.values(), st, flat_index(grid, window.center), window.radius);
}

double nu_bar(const SampledField& field, const MollifiedJet& jet, const BallWindow& window,
              int order) {
  check_order(order);
  check_jet(field, jet);
  const Grid& grid = field.grid();
  validate_window(grid, window);
  const std::size_t c = flat_index(grid, window.center);
  const auto offsets = ball_offsets(grid, window.radius);
  const double g0 = order == 1 ? gradient_component(jet, 0, c) : 0.0;
  const double g1 = order == 1 ? gradient_component(jet, 1, c) : 0.0;
  return jet_residual_at(grid, field.values(), offsets, c, jet.value[c], g0, g1,
                         window.radius);
}

double nu_bar(const SampledField& field, const BallWindow& window, int order) {
  check_order(order);
  validate_window(field.grid(), window);
  return nu_bar(field, mollified_jet(field, Mollifier{window.radius}), window, order);
}

double nu_tilde(const SampledField& field, const MollifiedJet& jet,
                const BallWindow& window, int order) {
  check_order(order);
  check_jet(field, jet);
  const Grid& grid = field.grid();
  validate_window(grid, window);
  const std::size_t c = flat_index(grid, window.center);
  const auto annulus = annulus_offsets(grid, 0.5 * window.radius, window.radius);
  check_annulus(grid, annulus, c, window.radius);
  const double g0 = order == 1 ? gradient_component(jet, 0, c) : 0.0;
  const double g1 = order == 1 ? gradient_component(jet, 1, c) : 0.0;
  return jet_residual_at(grid, field.values(), annulus, c, field[c], g0, g1,
                         window.radius);
}

double nu_tilde(const SampledField& field, const BallWindow& window, int order) {
  check_order(order);
  const Grid& grid = field.grid();
  validate_window(grid, window);
  if (order == 0) {
    const std::size_t c = flat_index(grid, window.center);
    const auto annulus = annulus_offsets(grid, 0.5 * window.radius, window.radius);
    check_annulus(grid, annulus, c, window.radius);
    return jet_residual_at(grid, field.values(), annulus, c, field[c], 0.0, 0.0,
                           window.radius);
  }
  return nu_tilde(field, mollified_jet(field, Mollifier{window.radius}), window, order);
}

CoefficientMatrix coefficient_matrix(const SampledField& field, const ScaleLadder& ladder,
                                     CoefficientKind kind) {
  const Grid& grid = field.grid();
  if (kind == CoefficientKind::beta) {
    throw InvalidArgument("beta matrices come from graph_beta_vs_nu1");
  }
  // Re-validate so hand-built ladders get the same checks.
  make_ladder(grid, ladder.top_radius, ladder.levels);

  const auto v = field.values();
  const std::size_t centers = grid.size();
  const auto levels = static_cast<std::size_t>(ladder.levels);
  CoefficientMatrix out{grid, ladder, kind, std::vector<double>(centers * levels, 0.0)};

  for (int j = 0; j < ladder.levels; ++j) {
    const double r = ladder.radius(j);
    const auto slot = [&](std::size_t c) -> double& {
      return out.values[c * levels + static_cast<std::size_t>(j)];
    };
    switch (kind) {
      case CoefficientKind::nu0: {
        const auto st = ball_stencil(grid, r);
        for (std::size_t c = 0; c < centers; ++c) slot(c) = nu0_at(grid, v, st, c, r);
        break;
      }
      case CoefficientKind::nu1: {
        const auto st = ball_stencil(grid, r);
        for (std::size_t c = 0; c < centers; ++c) slot(c) = nu1_at(grid, v, st, c, r);
        break;
      }
      case CoefficientKind::nu0_bar:
      case CoefficientKind::nu1_bar: {
        const auto jet = mollified_jet(field, Mollifier{r});
        const auto offsets = ball_offsets(grid, r);
        const bool first = kind == CoefficientKind::nu1_bar;
        for (std::size_t c = 0; c < centers; ++c) {
          const double g0 = first ? gradient_component(jet, 0, c) : 0.0;
          const double g1 = first ? gradient_component(jet, 1, c) : 0.0;
          slot(c) = jet_residual_at(grid, v, offsets, c, jet.value[c], g0, g1, r);
        }
        break;
      }
      case CoefficientKind::nu0_tilde:
      case CoefficientKind::nu1_tilde: {
        const auto annulus = annulus_offsets(grid, 0.5 * r, r);
        check_annulus(grid, annulus, 0, r);
        const bool first = kind == CoefficientKind::nu1_tilde;
        if (!first) {
          for (std::size_t c = 0; c < centers; ++c) {
            slot(c) = jet_residual_at(grid, v, annulus, c, v[c], 0.0, 0.0, r);
          }
          break;
        }
        const auto jet = mollified_jet(field, Mollifier{r});
        for (std::size_t c = 0; c < centers; ++c) {
          slot(c) = jet_residual_at(grid, v, annulus, c, v[c], gradient_component(jet, 0, c),
                                    gradient_component(jet, 1, c), r);
        }
        break;
      }
      case CoefficientKind::beta:
        break;
    }
  }
  return out;
}

}  // namespace ialpha
