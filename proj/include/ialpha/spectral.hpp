#pragma once

// Fourier-multiplier fractional calculus on the periodic grid and a
// principal-value quadrature of the fractional Laplacian used as an
// independent cross-check.

#include <vector>

#include "ialpha/field.hpp"

namespace ialpha {

enum class MultiplierKind { derivative, integral };

/// (2 pi |k| / L)^{+alpha} for derivative, ^{-alpha} for integral. The zero
/// mode is always projected out.
struct MultiplierSpec {
  double exponent = 0.5;
  MultiplierKind kind = MultiplierKind::derivative;
};

/// Throws InvalidArgument unless exponent lies in (0, 2).
void validate(const MultiplierSpec& spec);

SampledField apply_multiplier(const SampledField& field, const MultiplierSpec& spec);

/// D_alpha, multiplier (2 pi |k| / L)^alpha, alpha in (0, 2).
SampledField fractional_derivative(const SampledField& field, double alpha);

/// I_alpha, multiplier (2 pi |k| / L)^{-alpha}, alpha in (0, 2). Inverse of
/// fractional_derivative on mean-zero fields.
SampledField riesz_potential(const SampledField& field, double alpha);

/// Spectral gradient (multiplier 2 pi i k_a / L, Nyquist modes dropped).
std::vector<SampledField> spectral_gradient(const SampledField& field);

/// Principal-value integral p.v. \int (f(x) - f(y)) K(x - y) dy at a grid
/// point, with K the periodization of |u|^{-(d+alpha)} over the torus.
/// Evaluated as a symmetric second difference over lattice offsets plus the
/// zeta-function correction for the O(h^{2-alpha}) singular-cell error, whose
/// curvature factor comes from a centered finite difference.
double fractional_laplacian_pv(const SampledField& field, double alpha, Index center);

/// Ratio of the p.v. integral to D_alpha on the eigenfunction cos(2 pi x / L)
/// at the origin, on a fresh grid of the given resolution and unit period.
double calibrate_pv_constant(int dim, double alpha, int n_per_axis);

/// Periodized kernel sum_m |u + m L|^{-s}, u != 0 (mod L), in 1-d.
double periodic_power_kernel_1d(double u, double period, double s);

}  // namespace ialpha
