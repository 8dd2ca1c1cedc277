#pragma once

// Multiscale approximation coefficients: optimal (nu), mollified (nu bar) and
// annulus (nu tilde) families of orders 0 and 1.

#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ialpha/field.hpp"

namespace ialpha {

/// Radii r_j = top_radius * 2^{-j}, j = 0..levels-1. Each level stands for one
/// octave of dr/r, i.e. weight ln 2.
struct ScaleLadder {
  double top_radius = 0.0;
  int levels = 0;

  static constexpr double log_weight = std::numbers::ln2;

  double radius(int level) const;
  std::vector<double> radii() const;
  /// Level whose radius equals r up to 1e-12 relative, or -1.
  int level_of(double r) const;
  bool operator==(const ScaleLadder&) const = default;
};

/// Requires top_radius <= period/4 and smallest radius >= 4 * spacing.
ScaleLadder make_ladder(const Grid& grid, double top_radius, int levels);
/// period/4 down to the 4h floor.
ScaleLadder default_ladder(const Grid& grid);

enum class CoefficientKind { nu0, nu1, nu0_bar, nu1_bar, nu0_tilde, nu1_tilde, beta };

std::string_view to_string(CoefficientKind kind);
/// Throws InvalidArgument on an unknown name.
CoefficientKind coefficient_kind_from_string(std::string_view name);
/// Polynomial order of the competitor (0 or 1); beta counts as 1.
int order_of(CoefficientKind kind);

/// values[center * levels + level], every grid point as a center.
struct CoefficientMatrix {
  Grid grid;
  ScaleLadder ladder;
  CoefficientKind kind = CoefficientKind::nu0;
  std::vector<double> values;

  double at(std::size_t center, int level) const {
    return values[center * static_cast<std::size_t>(ladder.levels) +
                  static_cast<std::size_t>(level)];
  }
};

/// RMS of (f - ball mean) / r over the ball.
double nu0(const SampledField& field, const BallWindow& window);

/// RMS of (f - l*) / r with l* the least-squares affine fit on the ball.
/// Throws NumericError if the normal equations are singular.
double nu1(const SampledField& field, const BallWindow& window);

/// Residual against the jet of f * psi_r at the center (order 0: value,
/// order 1: value and gradient).
double nu_bar(const SampledField& field, const BallWindow& window, int order);
double nu_bar(const SampledField& field, const MollifiedJet& jet,
              const BallWindow& window, int order);

/// Annulus residual over r/2 <= |y| <= r of f(x+y) - f(x) (- g . y at order 1,
/// g the mollified gradient at x).
double nu_tilde(const SampledField& field, const BallWindow& window, int order);
double nu_tilde(const SampledField& field, const MollifiedJet& jet,
                const BallWindow& window, int order);

/// Every (grid point, ladder radius) pair. Not valid for kind beta; use
/// graph_beta_vs_nu1 for that.
CoefficientMatrix coefficient_matrix(const SampledField& field, const ScaleLadder& ladder,
                                     CoefficientKind kind);

}  // namespace ialpha
