#include "ialpha/special.hpp"

#include <array>
#include <cmath>

#include "ialpha/error.hpp"

namespace ialpha {

namespace {

// B_{2j} / (2j)! for j = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!(a > 0.0)) throw InvalidArgument("hurwitz_zeta requires a > 0");
  if (s == 1.0) throw InvalidArgument("hurwitz_zeta has a pole at s = 1");
  // Euler-Maclaurin with a shifted tail; valid for s > -19 with these terms.
  constexpr int kDirect = 24;
  double sum = 0.0;
  for (int k = kDirect - 1; k >= 0; --k) sum += std::pow(k + a, -s);
  const double x = kDirect + a;
  sum += std::pow(x, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(x, -s);
  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
  double rising = s;
  double power = std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * rising * power;
    const double m = 2.0 * static_cast<double>(j) + 1.0;
    rising *= (s + m) * (s + m + 1.0);
    power /= x * x;
  }
  return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double dirichlet_beta(double s) {
  return std::pow(4.0, -s) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75));
}

double square_lattice_zeta(double s) {
  // sum' (m^2 + n^2)^{-t} = 4 zeta(t) beta(t), t = s/2.
  const double t = 0.5 * s;
  return 4.0 * riemann_zeta(t) * dirichlet_beta(t);
}

}  // namespace ialpha
