#pragma once

// Square-function Carleson integrals built from coefficient matrices and the
// two-sided comparability experiment against the BMO norm of D_alpha f.

#include <cstddef>
#include <optional>
#include <vector>

#include "ialpha/coeffs.hpp"
#include "ialpha/field.hpp"

namespace ialpha {

struct SquareFunctionValue {
  double integral = 0.0;    // h^d sum_{x in B_R(z)} sum_{r_j <= R} (nu / r_j^{alpha-1})^2 ln 2
  double normalized = 0.0;  // integral / R^d
};

/// Throws InvalidArgument if R is not a ladder radius or alpha is outside (0,2).
SquareFunctionValue square_function_integral(const CoefficientMatrix& matrix, double alpha,
                                             std::size_t z, double R);

struct CarlesonWindow {
  std::size_t center = 0;
  double top_radius = 0.0;
  double integral = 0.0;
  double normalized = 0.0;
};

struct CarlesonReport {
  double alpha = 0.0;
  CoefficientKind kind = CoefficientKind::nu0;
  /// False when the coefficient order differs from floor(alpha).
  bool standard_pairing = true;
  Grid grid;
  ScaleLadder ladder;
  std::vector<CarlesonWindow> per_window;
  double constant = 0.0;  // max of per_window normalized values
  std::size_t argmax = 0;
  /// The maximum is over a finite test family, so it bounds the sup from below.
  bool lower_bound = true;
  double floor_radius = 0.0;  // smallest scale kept; smaller scales are truncated
};

/// Normalized integral for every (z, R) in centers x tops; constant = max.
CarlesonReport carleson_constant(const CoefficientMatrix& matrix, double alpha,
                                 const std::vector<std::size_t>& centers,
                                 const std::vector<double>& tops);

/// h^d sum over all x and all levels of (nu / r^{alpha-1})^2 ln 2.
double full_domain_square_integral(const CoefficientMatrix& matrix, double alpha);

/// Kind used for a given alpha: nu0 below 1, nu1 from 1 on.
CoefficientKind standard_kind(double alpha);

struct ExperimentOptions {
  std::optional<ScaleLadder> ladder;  // default_ladder when unset
  int center_stride = 1;              // Carleson test centers
  int bmo_center_stride = 1;
  double bmo_min_radius_cells = 2.0;  // BMO radii go down to this many spacings
};

struct ComparabilityRecord {
  double alpha = 0.0;
  CoefficientKind kind = CoefficientKind::nu0;
  double c_sq = 0.0;
  double bmo_sq = 0.0;
  /// c_sq / bmo_sq, or NaN with ratio_defined = false when bmo_sq == 0.
  double ratio = 0.0;
  bool ratio_defined = false;
  ScaleLadder ladder;
  std::vector<double> bmo_radii;
};

ComparabilityRecord comparability_experiment(const SampledField& field, double alpha,
                                             const ExperimentOptions& options = {});

/// Same, reusing a precomputed coefficient matrix of the standard kind.
ComparabilityRecord comparability_experiment(const SampledField& field,
                                             const CoefficientMatrix& matrix, double alpha,
                                             const ExperimentOptions& options = {});

/// Dyadic radii period/4 * 2^{-j} down to min_radius (inclusive).
std::vector<double> dyadic_radii(const Grid& grid, double min_radius);

}  // namespace ialpha
