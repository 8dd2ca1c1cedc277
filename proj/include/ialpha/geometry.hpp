#pragma once

// beta_{2,k} numbers of weighted point clouds and the graph bridge that pairs
// them with nu1 on a sampled field.

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "ialpha/coeffs.hpp"
#include "ialpha/field.hpp"

namespace ialpha {

/// Weighted points in R^D, stored row-major (point i occupies
/// coords[i*D .. i*D+D-1]).
class PointCloud {
 public:
  /// Throws InvalidArgument for D < 2, a ragged coordinate array, a weight
  /// count mismatch or a non-positive weight; NumericError for a non-finite
  /// coordinate.
  PointCloud(int ambient_dim, std::vector<double> coords, std::vector<double> weights);
  /// Unit weights.
  PointCloud(int ambient_dim, std::vector<double> coords);

  int ambient_dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  const double* point(std::size_t i) const { return coords_.data() + i * dim_; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

struct PlaneFit {
  std::vector<double> basepoint;               // weighted centroid of the ball
  std::vector<std::vector<double>> basis;      // k orthonormal directions
  double residual = 0.0;                       // normalized RMS distance (= beta)
  std::size_t count = 0;                       // points in the ball
};

struct BetaResult {
  double beta = 0.0;
  PlaneFit fit;
};

/// Open ball |Y - X| < r. Requires 1 <= k <= D-1 and at least k+1 points in the
/// ball; throws NumericError otherwise.
BetaResult beta2k(const PointCloud& cloud, const std::vector<double>& center, double r, int k);

/// Normalized RMS distance of the ball's points to the plane through
/// `basepoint` spanned by the (orthonormalized) `directions`.
double plane_residual(const PointCloud& cloud, const std::vector<double>& center, double r,
                      const std::vector<double>& basepoint,
                      const std::vector<std::vector<double>>& directions);

struct CloudFile {
  PointCloud cloud;
  bool unit_weights_defaulted = false;
};

/// Whitespace-separated text, one point per line; '#' starts a comment.
/// Every line carries either D or D+1 numbers (the extra one is the weight).
/// Throws DataError naming the line on malformed or inconsistent input.
CloudFile read_cloud(std::istream& in, int ambient_dim, const std::string& source = "cloud");

struct GraphBetaRecord {
  CoefficientMatrix beta;
  CoefficientMatrix nu1;
  /// beta / nu1 per entry; NaN where nu1 < ratio_floor.
  std::vector<double> ratio;
  static constexpr double ratio_floor = 1e-12;
  double lipschitz = 0.0;  // max |grad f| of the spectral gradient
  /// Windows whose graph ball held fewer than d + 1 samples; their beta and ratio are NaN.
  std::size_t undersampled = 0;
};

/// Graph cloud {(x, f(x))} with weights h^d sqrt(1 + |grad f|^2); beta_{2,d}
/// on balls centered at (x, f(x)) with x-distances taken periodically.
GraphBetaRecord graph_beta_vs_nu1(const SampledField& field, const ScaleLadder& ladder);

}  // namespace ialpha
