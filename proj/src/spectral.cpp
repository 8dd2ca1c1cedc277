#include "ialpha/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "ialpha/error.hpp"
#include "ialpha/special.hpp"

namespace ialpha {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidArgument(std::string(what) + " requires alpha in (0,2), got " +
                          std::to_string(alpha));
  }
}

template <typename Multiplier>
SampledField apply_spectral(const SampledField& field, Multiplier multiplier) {
  const Grid& grid = field.grid();
  const auto v = field.values();
  // Constants live entirely in the zero mode; removing one exactly first makes
  // constant inputs produce exact zeros.
  const double pivot = v[0];
  std::vector<double> centered(v.begin(), v.end());
  for (double& x : centered) x -= pivot;

  detail::RealFft fft(grid);
  auto spectrum = fft.forward(centered);
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    spectrum[s] *= multiplier(fft.frequency(s));
  }
  return SampledField(grid, fft.inverse(spectrum));
}

// sum over m in [-M, M]^2 of |u + m L|^{-s} plus a continuum estimate of the
// remaining lattice tail outside the box of half-width (M + 1/2) L.
double periodic_power_kernel_2d(double u0, double u1, double period, double s) {
  constexpr int kBox = 16;
  double sum = 0.0;
  for (int m0 = -kBox; m0 <= kBox; ++m0) {
    for (int m1 = -kBox; m1 <= kBox; ++m1) {
      const double a = u0 + m0 * period;
      const double b = u1 + m1 * period;
      sum += std::pow(a * a + b * b, -0.5 * s);
    }
  }
  // Exterior of the square [-a, a]^2: (8 a^{-(s-2)} / (s-2)) int_0^{pi/4} cos^{s-2}.
  const double excess = s - 2.0;
  const double a = (kBox + 0.5) * period;
  constexpr int kPanels = 64;
  const double width = (std::numbers::pi / 4.0) / kPanels;
  double angular = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double w = (i == 0 || i == kPanels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    angular += w * std::pow(std::cos(i * width), excess);
  }
  angular *= width / 3.0;
  return sum + 8.0 * std::pow(a, -excess) / excess * angular;
}

}  // namespace

void validate(const MultiplierSpec& spec) {
  check_alpha(spec.exponent, spec.kind == MultiplierKind::derivative
                                 ? "fractional derivative"
                                 : "riesz potential");
}

SampledField apply_multiplier(const SampledField& field, const MultiplierSpec& spec) {
  validate(spec);
  const double L = field.grid().period;
  const double power =
      spec.kind == MultiplierKind::derivative ? spec.exponent : -spec.exponent;
  return apply_spectral(field, [&](std::array<int, 2> k) -> std::complex<double> {
    const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
    if (k2 == 0.0) return 0.0;
    return std::pow(kTwoPi * std::sqrt(k2) / L, power);
  });
}

SampledField fractional_derivative(const SampledField& field, double alpha) {
  return apply_multiplier(field, {alpha, MultiplierKind::derivative});
}

SampledField riesz_potential(const SampledField& field, double alpha) {
  return apply_multiplier(field, {alpha, MultiplierKind::integral});
}

std::vector<SampledField> spectral_gradient(const SampledField& field) {
  const Grid& grid = field.grid();
  const int nyquist = grid.n_per_axis / 2;
  std::vector<SampledField> out;
  for (int axis = 0; axis < grid.dim; ++axis) {
    out.push_back(apply_spectral(field, [&](std::array<int, 2> k) -> std::complex<double> {
      const int ka = k[axis];
      if (ka == nyquist || ka == -nyquist) return 0.0;
      return {0.0, kTwoPi * ka / grid.period};
    }));
  }
  return out;
}

double periodic_power_kernel_1d(double u, double period, double s) {
  double t = std::fmod(u / period, 1.0);
  if (t < 0.0) t += 1.0;
  if (t == 0.0) throw InvalidArgument("periodic kernel evaluated at the singularity");
  return std::pow(period, -s) * (hurwitz_zeta(s, t) + hurwitz_zeta(s, 1.0 - t));
}

double fractional_laplacian_pv(const SampledField& field, double alpha, Index center) {
  check_alpha(alpha, "fractional_laplacian_pv");
  const Grid& grid = field.grid();
  const int n = grid.n_per_axis;
  const double h = grid.spacing();
  const double L = grid.period;
  const auto v = field.values();
  const std::size_t c = flat_index(grid, center);
  const double fx = v[c];

  if (grid.dim == 1) {
    const double s = 1.0 + alpha;
    double sum = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double diff =
          fx - 0.5 * (v[shifted(grid, c, j, 0)] + v[shifted(grid, c, -j, 0)]);
      if (diff == 0.0) continue;
      const double weight = j == n / 2 ? 1.0 : 2.0;
      sum += weight * diff * periodic_power_kernel_1d(j * h, L, s);
    }
    sum *= h;
    const double curvature =
        (v[shifted(grid, c, 1, 0)] - 2.0 * fx + v[shifted(grid, c, -1, 0)]) / (h * h);
    return sum + std::pow(h, 2.0 - alpha) * riemann_zeta(alpha - 1.0) * curvature;
  }

  const double s = 2.0 + alpha;
  double sum = 0.0;
  for (int d0 = -n / 2 + 1; d0 <= n / 2; ++d0) {
    for (int d1 = -n / 2 + 1; d1 <= n / 2; ++d1) {
      if (d0 == 0 && d1 == 0) continue;
      const double diff =
          fx - 0.5 * (v[shifted(grid, c, d0, d1)] + v[shifted(grid, c, -d0, -d1)]);
      if (diff == 0.0) continue;
      sum += diff * periodic_power_kernel_2d(d0 * h, d1 * h, L, s);
    }
  }
  sum *= h * h;
  const double laplacian = (v[shifted(grid, c, 1, 0)] + v[shifted(grid, c, -1, 0)] +
                            v[shifted(grid, c, 0, 1)] + v[shifted(grid, c, 0, -1)] -
                            4.0 * fx) /
                           (h * h);
  return sum + 0.25 * std::pow(h, 2.0 - alpha) * square_lattice_zeta(alpha) * laplacian;
}

double calibrate_pv_constant(int dim, double alpha, int n_per_axis) {
  check_alpha(alpha, "calibrate_pv_constant");
  const Grid grid = make_grid(dim, n_per_axis, 1.0);
  const auto f = sample(grid, [](const Point& x) { return std::cos(kTwoPi * x[0]); });
  const double quadrature = fractional_laplacian_pv(f, alpha, {0, 0});
  return quadrature / std::pow(kTwoPi, alpha);
}

}  // namespace ialpha
