#include "ialpha/corpus.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "ialpha/coeffs.hpp"
#include "ialpha/error.hpp"
#include "ialpha/report.hpp"
#include "ialpha/spectral.hpp"
#include "ialpha/special.hpp"

namespace ialpha {

namespace {

constexpr std::array<Family, 7> kFamilies = {
    Family::smooth_bump, Family::cusp,     Family::weierstrass, Family::sign_jump,
    Family::log_singularity, Family::riesz_of_noise, Family::sinusoid};

// C-infinity step: 1 for t <= a, 0 for t >= b.
double smooth_step(double t, double a, double b) {
  if (t <= a) return 1.0;
  if (t >= b) return 0.0;
  const double u = (t - a) / (b - a);
  const double p = std::exp(-1.0 / (1.0 - u));
  const double q = std::exp(-1.0 / u);
  return p / (p + q);
}

double radial_distance(const Grid& grid, const Point& x, double c) {
  double sq = 0.0;
  for (int a = 0; a < grid.dim; ++a) sq += (x[a] - c) * (x[a] - c);
  return std::sqrt(sq);
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Row-major +-1 values, one per noise cell.
std::vector<double> rademacher_cells(const CorpusSpec& spec) {
  const std::size_t count = spec.grid.dim == 1
                                ? static_cast<std::size_t>(spec.cells)
                                : static_cast<std::size_t>(spec.cells) * spec.cells;
  std::mt19937_64 gen(spec.seed);
  std::vector<double> out(count);
  for (auto& v : out) v = (gen() >> 63) != 0 ? 1.0 : -1.0;
  return out;
}

SampledField noise_field(const CorpusSpec& spec) {
  const Grid& grid = spec.grid;
  const auto cells = rademacher_cells(spec);
  const int per = grid.n_per_axis / spec.cells;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Index idx = grid_index(grid, i);
    const std::size_t cell = grid.dim == 1
                                 ? static_cast<std::size_t>(idx[0] / per)
                                 : static_cast<std::size_t>(idx[0] / per) * spec.cells +
                                       static_cast<std::size_t>(idx[1] / per);
    values[i] = cells[cell];
  }
  return SampledField(grid, std::move(values));
}

std::string header_error(const std::filesystem::path& path, const std::string& what) {
  return "malformed_header: " + path.string() + ": " + what;
}

// Hurwitz zeta with the a = 0 endpoint allowed for s < 0.
double hurwitz_closed(double s, double a) {
  return a <= 0.0 ? hurwitz_zeta(s, 1.0) : hurwitz_zeta(s, a);
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::smooth_bump: return "smooth_bump";
    case Family::cusp: return "cusp";
    case Family::weierstrass: return "weierstrass";
    case Family::sign_jump: return "sign_jump";
    case Family::log_singularity: return "log_singularity";
    case Family::riesz_of_noise: return "riesz_of_noise";
    case Family::sinusoid: return "sinusoid";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (auto f : kFamilies) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

void validate(const CorpusSpec& spec) {
  make_grid(spec.grid.dim, spec.grid.n_per_axis, spec.grid.period);
  switch (spec.family) {
    case Family::cusp:
      if (!(spec.gamma > 0.0 && spec.gamma <= 1.0)) {
        throw InvalidArgument("cusp gamma must lie in (0,1]");
      }
      break;
    case Family::weierstrass:
      if (!(spec.beta_w > 0.0 && spec.beta_w < 1.0)) {
        throw InvalidArgument("weierstrass beta_w must lie in (0,1)");
      }
      if (spec.levels < 4) throw InvalidArgument("weierstrass needs at least 4 levels");
      break;
    case Family::riesz_of_noise:
      if (!(spec.alpha0 > 0.0 && spec.alpha0 < 2.0)) {
        throw InvalidArgument("riesz_of_noise alpha0 must lie in (0,2)");
      }
      if (!is_power_of_two(spec.cells) || spec.cells < 2 || spec.cells > spec.grid.n_per_axis) {
        throw InvalidArgument("riesz_of_noise cells must be a power of two in [2, n]");
      }
      break;
    case Family::sinusoid:
      if (spec.frequency < 1 || 2 * spec.frequency >= spec.grid.n_per_axis) {
        throw InvalidArgument("sinusoid frequency must lie in [1, n/2)");
      }
      break;
    default:
      break;
  }
}

std::map<std::string, std::string> parameters(const CorpusSpec& spec) {
  std::map<std::string, std::string> out;
  switch (spec.family) {
    case Family::cusp: out["gamma"] = format_double(spec.gamma); break;
    case Family::weierstrass:
      out["beta_w"] = format_double(spec.beta_w);
      out["levels"] = std::to_string(spec.levels);
      break;
    case Family::riesz_of_noise:
      out["alpha0"] = format_double(spec.alpha0);
      out["seed"] = std::to_string(spec.seed);
      out["cells"] = std::to_string(spec.cells);
      break;
    case Family::sinusoid: out["frequency"] = std::to_string(spec.frequency); break;
    default: break;
  }
  return out;
}

CorpusSpec spec_from_parameters(const Grid& grid, Family family,
                                const std::map<std::string, std::string>& params) {
  CorpusSpec spec;
  spec.grid = grid;
  spec.family = family;
  const auto allowed = parameters(spec);
  for (const auto& [key, text] : params) {
    if (!allowed.contains(key)) {
      throw DataError("parameter '" + key + "' does not apply to family " +
                      std::string(to_string(family)));
    }
    double v = 0.0;
    if (!parse_double(text, v)) throw DataError("parameter '" + key + "' is not a number");
    const auto as_int = [&]() {
      if (v != std::floor(v) || std::abs(v) > 1e15) {
        throw DataError("parameter '" + key + "' must be an integer");
      }
      return static_cast<long long>(v);
    };
    if (key == "gamma") spec.gamma = v;
    else if (key == "beta_w") spec.beta_w = v;
    else if (key == "levels") spec.levels = static_cast<int>(as_int());
    else if (key == "alpha0") spec.alpha0 = v;
    else if (key == "cells") spec.cells = static_cast<int>(as_int());
    else if (key == "frequency") spec.frequency = static_cast<int>(as_int());
    else if (key == "seed") {
      std::size_t used = 0;
      try {
        spec.seed = std::stoull(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size()) throw DataError("parameter 'seed' must be an unsigned integer");
    }
  }
  return spec;
}

SampledField generate(const CorpusSpec& spec) {
  validate(spec);
  const Grid& grid = spec.grid;
  const double L = grid.period;
  const double c = L / 2.0;
  switch (spec.family) {
    case Family::smooth_bump:
      return sample(grid, [&](const Point& x) {
        return std::numbers::e * bump_profile(radial_distance(grid, x, c) / (L / 4.0));
      });
    case Family::cusp:
      return sample(grid, [&](const Point& x) {
        const double t = radial_distance(grid, x, c);
        return std::pow(t, spec.gamma) * smooth_step(t, L / 16.0, 3.0 * L / 8.0);
      });
    case Family::weierstrass:
      return sample(grid, [&](const Point& x) {
        double s = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
          double freq = 1.0;
          for (int j = 0; j < spec.levels && 2.0 * freq < grid.n_per_axis; ++j, freq *= 3.0) {
            s += std::pow(3.0, -j * spec.beta_w) * std::cos(2.0 * std::numbers::pi * freq * x[a] / L);
          }
        }
        return s;
      });
    case Family::sign_jump: {
      // Exact signs, so the samples at 0 and L/2 are 0 on every grid.
      std::vector<double> values(grid.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        const int k = grid_index(grid, i)[0];
        values[i] = (k == 0 || 2 * k == grid.n_per_axis) ? 0.0 : (2 * k < grid.n_per_axis ? 1.0 : -1.0);
      }
      return SampledField(grid, std::move(values));
    }
    case Family::log_singularity: {
      const double cs = c + 0.5 * grid.spacing();
      return sample(grid, [&](const Point& x) {
        const double t = radial_distance(grid, x, cs);
        return -std::log(t / L) * smooth_step(t, L / 16.0, 3.0 * L / 8.0);
      });
    }
    case Family::riesz_of_noise:
      return riesz_potential(noise_field(spec), spec.alpha0);
    case Family::sinusoid:
      return sample(grid, [&](const Point& x) {
        double p = 1.0;
        for (int a = 0; a < grid.dim; ++a) {
          p *= std::cos(2.0 * std::numbers::pi * spec.frequency * x[a] / L);
        }
        return p;
      });
  }
  throw InvalidArgument("unknown family");
}

ExpectedRegularity expected_regularity(const CorpusSpec& spec) {
  ExpectedRegularity out;
  switch (spec.family) {
    case Family::smooth_bump:
    case Family::sinusoid:
      out.holder = 1.0;
      out.band = {0.0, 2.0, false};
      break;
    case Family::cusp:
      out.holder = spec.gamma;
      out.band = {0.0, spec.gamma, true};
      break;
    case Family::weierstrass:
      out.holder = spec.beta_w;
      out.band = {0.0, spec.beta_w, false};
      break;
    case Family::riesz_of_noise:
      if (spec.alpha0 < 1.0) out.holder = spec.alpha0;
      out.band = {0.0, spec.alpha0, true};
      break;
    case Family::sign_jump:
    case Family::log_singularity:
      out.band = {0.0, 0.0, false};
      break;
  }
  return out;
}

void save_field(const std::filesystem::path& path, const SampledField& field,
                std::string_view family, const std::map<std::string, std::string>& params) {
  const Grid& grid = field.grid();
  std::string text = "# " + std::string(field_format) + " dim=" + std::to_string(grid.dim) +
                     " n_per_axis=" + std::to_string(grid.n_per_axis) +
                     " period=" + format_double(grid.period) + " family=" + std::string(family);
  for (const auto& [k, v] : params) {
    if (k.find_first_of(" =\n") != std::string::npos || v.find_first_of(" \n") != std::string::npos) {
      throw InvalidArgument("header parameter '" + k + "' contains whitespace or '='");
    }
    text += " " + k + "=" + v;
  }
  text += "\n";
  text.reserve(text.size() + field.size() * 24);
  for (double v : field.values()) {
    text += format_double(v);
    text += '\n';
  }
  write_atomic(path, text);
}

FieldFile load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("io: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(header_error(path, "empty file"));

  std::istringstream head(line);
  std::string hash;
  std::string format;
  head >> hash >> format;
  if (hash != "#" || format != field_format) {
    throw DataError(header_error(path, "expected '# " + std::string(field_format) + "'"));
  }
  std::map<std::string, std::string> kv;
  std::string tok;
  while (head >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DataError(header_error(path, "token '" + tok + "' is not key=value"));
    }
    if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
      throw DataError(header_error(path, "duplicate key '" + tok.substr(0, eq) + "'"));
    }
  }
  const auto take = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DataError(header_error(path, "missing " + key));
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto as_int = [&](const std::string& key, const std::string& text) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) {
      throw DataError(header_error(path, key + " is not an integer"));
    }
    return v;
  };
  const int dim = as_int("dim", take("dim"));
  if (dim != 1 && dim != 2) {
    throw DataError("unsupported_dimension: " + path.string() + ": dim=" + std::to_string(dim));
  }
  const int n = as_int("n_per_axis", take("n_per_axis"));
  double period = 0.0;
  if (!parse_double(take("period"), period)) {
    throw DataError(header_error(path, "period is not a number"));
  }
  Grid grid;
  try {
    grid = make_grid(dim, n, period);
  } catch (const InvalidArgument& e) {
    throw DataError(header_error(path, e.what()));
  }
  std::string family = "unknown";
  if (kv.contains("family")) family = take("family");

  std::vector<double> values;
  values.reserve(grid.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      throw DataError("malformed_value: " + path.string() + ":" + std::to_string(lineno) +
                      ": '" + line + "'");
    }
    if (!std::isfinite(v)) {
      throw DataError("non_finite: " + path.string() + ":" + std::to_string(lineno));
    }
    values.push_back(v);
  }
  if (values.size() != grid.size()) {
    throw DataError("length_mismatch: " + path.string() + ": expected " +
                    std::to_string(grid.size()) + " values, found " +
                    std::to_string(values.size()));
  }
  return {SampledField(grid, std::move(values)), family, kv};
}

SlopeFit holder_slope(const SampledField& field, std::span<const double> radii,
                      SlopeStatistic statistic, int center_stride) {
  if (radii.size() < 2) throw InvalidArgument("slope fit needs at least two radii");
  const Grid& grid = field.grid();
  const auto centers = strided_centers(grid, center_stride);
  SlopeFit fit;
  for (double r : radii) {
    double stat = 0.0;
    for (std::size_t c : centers) {
      const double a = r * nu_tilde(field, BallWindow{grid_index(grid, c), r}, 0);
      stat = statistic == SlopeStatistic::max ? std::max(stat, a) : stat + a;
    }
    if (statistic == SlopeStatistic::mean) stat /= static_cast<double>(centers.size());
    if (!(stat > 0.0)) throw NumericError("zero oscillation at radius " + std::to_string(r));
    fit.radii.push_back(r);
    fit.amplitude.push_back(stat);
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(fit.radii.size());
  for (std::size_t i = 0; i < fit.radii.size(); ++i) {
    const double x = std::log(fit.radii[i]);
    const double y = std::log(fit.amplitude[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

SampledField riesz_kernel_oracle(const CorpusSpec& spec) {
  validate(spec);
  if (spec.family != Family::riesz_of_noise || spec.grid.dim != 1 || !(spec.alpha0 < 1.0)) {
    throw InvalidArgument("kernel oracle covers 1-d riesz_of_noise with alpha0 < 1");
  }
  const Grid& grid = spec.grid;
  const double L = grid.period;
  const double a = spec.alpha0;
  // I_a b = c * (b * K), K(u) = L^{a-1} [zeta(1-a, u/L) + zeta(1-a, 1-u/L)] is the
  // zero-mean periodization of |u|^{a-1}; its antiderivative in t = u/L is
  // L^a [zeta(-a, t) - zeta(-a, 1-t)] / a.
  const double c = std::tgamma((1.0 - a) / 2.0) /
                   (std::pow(2.0, a) * std::sqrt(std::numbers::pi) * std::tgamma(a / 2.0));
  const auto antiderivative = [&](double t) {
    return std::pow(L, a) * (hurwitz_closed(-a, t) - hurwitz_closed(-a, 1.0 - t)) / a;
  };
  // Integral of K over u in [lo, hi] with lo < hi, the interval inside one period
  // shifted so that the singular point sits at an end.
  const auto cell_integral = [&](double lo, double hi) {
    const auto wrap = [&](double u) { return u - L * std::floor(u / L); };
    double wl = wrap(lo);
    double wh = wl + (hi - lo);
    if (wh <= L) return antiderivative(wh / L) - antiderivative(wl / L);
    return (antiderivative(1.0) - antiderivative(wl / L)) + (antiderivative((wh - L) / L) - antiderivative(0.0));
  };

  const auto cells = rademacher_cells(spec);
  const double width = L / spec.cells;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = coordinates(grid, i)[0];
    double s = 0.0;
    for (int j = 0; j < spec.cells; ++j) {
      // Block j is the union of the sample cells [x_i - h/2, x_i + h/2) it holds:
      // y in [j w - h/2, (j+1) w - h/2], u = x - y.
      const double lo = j * width - 0.5 * grid.spacing();
      s += cells[static_cast<std::size_t>(j)] * cell_integral(x - lo - width, x - lo);
    }
    values[i] = c * s;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (double& v : values) v -= mean;
  return SampledField(grid, std::move(values));
}

}  // namespace ialpha
