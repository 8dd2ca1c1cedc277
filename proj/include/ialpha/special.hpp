#pragma once

// Zeta-type special functions used by the periodized singular kernels.

namespace ialpha {

/// Hurwitz zeta sum_{k>=0} (k+a)^{-s}, analytically continued to all s != 1.
/// Requires a > 0.
double hurwitz_zeta(double s, double a);

/// Riemann zeta, continued to s != 1.
double riemann_zeta(double s);

/// Dirichlet beta sum_{k>=0} (-1)^k (2k+1)^{-s}, continued. Evaluated through
/// two Hurwitz zetas, so s = 1 is rejected.
double dirichlet_beta(double s);

/// Continued Epstein zeta of the square lattice, sum' |m|^{-s} over Z^2.
double square_lattice_zeta(double s);

}  // namespace ialpha
