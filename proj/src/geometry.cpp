#include "ialpha/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ialpha/error.hpp"
#include "ialpha/spectral.hpp"

namespace ialpha {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Best k-plane through the weighted centroid of centered-at-origin points.
// `local` holds one point per column.
BetaResult fit_local(const Matrix& local, const Vector& w, double r, int k,
                     const Vector& origin) {
  const auto dim = local.rows();
  const auto count = local.cols();
  if (count < k + 1) {
    throw NumericError("ball of radius " + std::to_string(r) + " holds " +
                       std::to_string(count) + " points, need " + std::to_string(k + 1));
  }
  const double total = w.sum();
  const Vector centroid = (local * w) / total;
  const Matrix centered = local.colwise() - centroid;
  const Matrix moment = centered * w.asDiagonal() * centered.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(moment);
  if (eig.info() != Eigen::Success) throw NumericError("eigen solver failed");
  const Matrix& vecs = eig.eigenvectors();  // ascending eigenvalues

  // Residual from the normal components, which keeps flat clouds at ~1e-16
  // instead of the square root of a rounding-level eigenvalue.
  const Matrix normal = vecs.leftCols(dim - k).transpose() * centered;
  const double sq = (normal.array().square().colwise().sum().transpose() * w.array()).sum();

  BetaResult out;
  out.beta = std::sqrt(sq / total) / r;
  const Vector base = centroid + origin;
  out.fit.basepoint.assign(base.data(), base.data() + dim);
  for (int i = 0; i < k; ++i) {
    const Vector e = vecs.col(dim - 1 - i);
    out.fit.basis.emplace_back(e.data(), e.data() + dim);
  }
  out.fit.residual = out.beta;
  out.fit.count = static_cast<std::size_t>(count);
  return out;
}

void check_center(const PointCloud& cloud, const std::vector<double>& center, double r) {
  if (static_cast<int>(center.size()) != cloud.ambient_dim()) {
    throw InvalidArgument("center has " + std::to_string(center.size()) +
                          " coordinates, cloud has " + std::to_string(cloud.ambient_dim()));
  }
  if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
}

// Points of the open ball, relative to the center, one per column.
std::pair<Matrix, Vector> gather(const PointCloud& cloud, const std::vector<double>& center,
                                 double r) {
  const int D = cloud.ambient_dim();
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double* p = cloud.point(i);
    double d2 = 0.0;
    for (int a = 0; a < D; ++a) d2 += (p[a] - center[a]) * (p[a] - center[a]);
    if (d2 < r * r) inside.push_back(i);
  }
  Matrix local(D, static_cast<Eigen::Index>(inside.size()));
  Vector w(static_cast<Eigen::Index>(inside.size()));
  for (std::size_t j = 0; j < inside.size(); ++j) {
    const double* p = cloud.point(inside[j]);
    for (int a = 0; a < D; ++a) local(a, static_cast<Eigen::Index>(j)) = p[a] - center[a];
    w(static_cast<Eigen::Index>(j)) = cloud.weight(inside[j]);
  }
  return {std::move(local), std::move(w)};
}

}  // namespace

PointCloud::PointCloud(int ambient_dim, std::vector<double> coords, std::vector<double> weights)
    : dim_(ambient_dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (dim_ < 2) throw InvalidArgument("ambient dimension must be at least 2");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw InvalidArgument("coordinate array is not a multiple of the ambient dimension");
  }
  if (weights_.size() != coords_.size() / static_cast<std::size_t>(dim_)) {
    throw InvalidArgument("weight count does not match point count");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw NumericError("non-finite coordinate at point " + std::to_string(i / dim_));
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("weight of point " + std::to_string(i) + " is not positive");
    }
    total += weights_[i];
  }
  if (!(total > 0.0)) throw InvalidArgument("cloud has no mass");
}

PointCloud::PointCloud(int ambient_dim, std::vector<double> coords)
    : PointCloud(ambient_dim, coords,
                 std::vector<double>(ambient_dim > 0 ? coords.size() / ambient_dim : 0, 1.0)) {}

BetaResult beta2k(const PointCloud& cloud, const std::vector<double>& center, double r, int k) {
  check_center(cloud, center, r);
  if (k < 1 || k > cloud.ambient_dim() - 1) {
    throw InvalidArgument("plane dimension k must lie in [1, D-1]");
  }
  auto [local, w] = gather(cloud, center, r);
  const Vector origin = Eigen::Map<const Vector>(center.data(), cloud.ambient_dim());
  return fit_local(local, w, r, k, origin);
}

double plane_residual(const PointCloud& cloud, const std::vector<double>& center, double r,
                      const std::vector<double>& basepoint,
                      const std::vector<std::vector<double>>& directions) {
  check_center(cloud, center, r);
  const int D = cloud.ambient_dim();
  if (static_cast<int>(basepoint.size()) != D) throw InvalidArgument("basepoint dimension");
  Matrix span(D, static_cast<Eigen::Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (static_cast<int>(directions[i].size()) != D) throw InvalidArgument("direction dimension");
    for (int a = 0; a < D; ++a) span(a, static_cast<Eigen::Index>(i)) = directions[i][a];
  }
  const Matrix q = span.householderQr().householderQ() *
                   Matrix::Identity(D, static_cast<Eigen::Index>(directions.size()));
  auto [local, w] = gather(cloud, center, r);
  if (local.cols() == 0) throw NumericError("ball is empty");
  Vector shift(D);
  for (int a = 0; a < D; ++a) shift(a) = basepoint[a] - center[a];
  const Matrix rel = local.colwise() - shift;
  const Matrix normal = rel - q * (q.transpose() * rel);
  const double sq = (normal.array().square().colwise().sum().transpose() * w.array()).sum();
  return std::sqrt(sq / w.sum()) / r;
}

CloudFile read_cloud(std::istream& in, int ambient_dim, const std::string& source) {
  if (ambient_dim < 2) throw InvalidArgument("ambient dimension must be at least 2");
  std::vector<double> coords;
  std::vector<double> weights;
  int columns = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::vector<double> nums;
    std::string tok;
    while (row >> tok) {
      double v = 0.0;
      std::size_t used = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw DataError(source + ":" + std::to_string(lineno) + ": not a number '" + tok + "'");
      }
      nums.push_back(v);
    }
    if (nums.empty()) continue;
    const int c = static_cast<int>(nums.size());
    if (c != ambient_dim && c != ambient_dim + 1) {
      throw DataError(source + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(ambient_dim) + " or " + std::to_string(ambient_dim + 1) +
                      " columns, got " + std::to_string(c));
    }
    if (columns >= 0 && c != columns) {
      throw DataError(source + ":" + std::to_string(lineno) + ": column count changed");
    }
    columns = c;
    for (int a = 0; a < ambient_dim; ++a) {
      if (!std::isfinite(nums[a])) {
        throw DataError(source + ":" + std::to_string(lineno) + ": non-finite coordinate");
      }
      coords.push_back(nums[a]);
    }
    const double w = c > ambient_dim ? nums[ambient_dim] : 1.0;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DataError(source + ":" + std::to_string(lineno) + ": weight must be positive");
    }
    weights.push_back(w);
  }
  if (weights.empty()) throw DataError(source + ": no points");
  return {PointCloud(ambient_dim, std::move(coords), std::move(weights)),
          columns == ambient_dim};
}

GraphBetaRecord graph_beta_vs_nu1(const SampledField& field, const ScaleLadder& ladder) {
  const Grid& grid = field.grid();
  const int d = grid.dim;
  const int D = d + 1;
  const double h = grid.spacing();
  const auto v = field.values();

  GraphBetaRecord rec;
  rec.nu1 = coefficient_matrix(field, ladder, CoefficientKind::nu1);
  rec.beta = CoefficientMatrix{grid, ladder, CoefficientKind::beta,
                               std::vector<double>(rec.nu1.values.size(), 0.0)};

  const auto grad = spectral_gradient(field);
  std::vector<double> weight(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double g2 = 0.0;
    for (const auto& g : grad) g2 += g[i] * g[i];
    rec.lipschitz = std::max(rec.lipschitz, std::sqrt(g2));
    weight[i] = std::pow(h, d) * std::sqrt(1.0 + g2);
  }

  const Vector origin = Vector::Zero(D);
  const auto levels = static_cast<std::size_t>(ladder.levels);
  for (int j = 0; j < ladder.levels; ++j) {
    const double r = ladder.radius(j);
    const auto base = ball_offsets(grid, r);
    Matrix local(D, static_cast<Eigen::Index>(base.size()));
    Vector w(static_cast<Eigen::Index>(base.size()));
    for (std::size_t c = 0; c < grid.size(); ++c) {
      Eigen::Index m = 0;
      for (const auto& off : base) {
        const std::size_t y = shifted(grid, c, off);
        const double dz = v[y] - v[c];
        if (off.distance * off.distance + dz * dz >= r * r) continue;
        local(0, m) = off.d0 * h;
        if (d == 2) local(1, m) = off.d1 * h;
        local(D - 1, m) = dz;
        w(m) = weight[y];
        ++m;
      }
      auto& out = rec.beta.values[c * levels + static_cast<std::size_t>(j)];
      if (m < d + 1) {
        // Steep stretch: the graph ball holds too few samples for a d-plane.
        out = std::numeric_limits<double>::quiet_NaN();
        ++rec.undersampled;
        continue;
      }
      out = fit_local(local.leftCols(m), w.head(m), r, d, origin).beta;
    }
  }

  rec.ratio.resize(rec.beta.values.size());
  for (std::size_t i = 0; i < rec.ratio.size(); ++i) {
    rec.ratio[i] = rec.nu1.values[i] < GraphBetaRecord::ratio_floor
                       ? std::numeric_limits<double>::quiet_NaN()
                       : rec.beta.values[i] / rec.nu1.values[i];
  }
  return rec;
}

}  // namespace ialpha
