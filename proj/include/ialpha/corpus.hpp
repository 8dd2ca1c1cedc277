#pragma once

// Synthetic fields with known regularity, the field file format and a
// log-log slope estimator for the Hoelder exponent.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ialpha/field.hpp"

namespace ialpha {

enum class Family { smooth_bump, cusp, weierstrass, sign_jump, log_singularity, riesz_of_noise,
                    sinusoid };

std::string_view to_string(Family family);
/// Throws InvalidArgument on an unknown name.
Family family_from_string(std::string_view name);

/// Only the parameters of the chosen family are meaningful; the rest keep
/// their defaults and are not serialized.
struct CorpusSpec {
  Family family = Family::smooth_bump;
  Grid grid;
  double gamma = 0.5;        // cusp exponent, (0, 1]
  double beta_w = 0.5;       // weierstrass exponent, (0, 1)
  int levels = 8;            // weierstrass terms, >= 4
  double alpha0 = 0.5;       // riesz_of_noise order, (0, 2)
  std::uint64_t seed = 7;    // riesz_of_noise
  int cells = 64;            // riesz_of_noise noise cells per axis, power of two <= n
  int frequency = 1;         // sinusoid, >= 1
};

/// Throws InvalidArgument on out-of-range parameters.
void validate(const CorpusSpec& spec);

/// Family parameters as ordered key/value text (no grid fields).
std::map<std::string, std::string> parameters(const CorpusSpec& spec);
/// Inverse of parameters(); unknown keys throw DataError.
CorpusSpec spec_from_parameters(const Grid& grid, Family family,
                                const std::map<std::string, std::string>& params);

/// Deterministic field for the spec. Bump and cusp sit at the domain center:
///   smooth_bump      e * bump(|x - c| / (L/4)), peak 1, zero for |x - c| >= L/4
///   cusp             |x - c|^gamma * step(|x - c|), step = 1 up to L/16, 0 from 3L/8
///   weierstrass      sum_{j<levels, 3^j < n/2} 3^{-j beta_w} cos(2 pi 3^j x_a / L), summed over axes
///   sign_jump        sign(sin(2 pi x_0 / L))
///   log_singularity  -log(|x - c'| / L) * step(|x - c'|), c' = c + h/2 on every axis
///   riesz_of_noise   I_alpha0 of a seeded +-1 field constant on cells^d blocks, mean removed
///   sinusoid         prod_a cos(2 pi k x_a / L)
SampledField generate(const CorpusSpec& spec);

/// Interval (lower, upper) of alpha with the closed/open flag on upper.
struct AlphaBand {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_closed = false;
  bool contains(double alpha) const {
    return alpha > lower && (upper_closed ? alpha <= upper : alpha < upper);
  }
  bool empty() const { return !(upper > lower); }
};

struct ExpectedRegularity {
  std::optional<double> holder;
  AlphaBand band;
};

ExpectedRegularity expected_regularity(const CorpusSpec& spec);

/// Metadata carried in a field file header.
struct FieldFile {
  SampledField field;
  std::string family;                          // "unknown" when absent
  std::map<std::string, std::string> params;   // remaining key=value pairs
};

inline constexpr std::string_view field_format = "ialpha-field/1";

/// Writes atomically (temp file + rename). Values use shortest round-trip text.
void save_field(const std::filesystem::path& path, const SampledField& field,
                std::string_view family = "unknown",
                const std::map<std::string, std::string>& params = {});

/// Error messages start with one of: malformed_header, unsupported_dimension,
/// length_mismatch, non_finite, malformed_value, io.
FieldFile load_field(const std::filesystem::path& path);

enum class SlopeStatistic { mean, max };

struct SlopeFit {
  double slope = 0.0;
  std::vector<double> radii;
  std::vector<double> amplitude;  // statistic over x of r * nu0_tilde(x, r)
};

/// Least-squares slope of log(stat_x r * nu0_tilde(x, r)) against log r.
SlopeFit holder_slope(const SampledField& field, std::span<const double> radii,
                      SlopeStatistic statistic, int center_stride = 1);

/// Kernel-form oracle for riesz_of_noise in 1-d with alpha0 in (0, 1): the
/// piecewise-constant noise integrated exactly against the periodized Riesz
/// kernel, mean removed.
SampledField riesz_kernel_oracle(const CorpusSpec& spec);

}  // namespace ialpha
