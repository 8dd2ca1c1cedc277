#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ialpha/bmo.hpp"
#include "ialpha/carleson.hpp"
#include "ialpha/coeffs.hpp"
#include "ialpha/corpus.hpp"
#include "ialpha/error.hpp"
#include "ialpha/field.hpp"
#include "ialpha/geometry.hpp"
#include "ialpha/report.hpp"
#include "ialpha/spectral.hpp"

namespace ialpha::cli {

namespace {

using Json = nlohmann::ordered_json;

// Flat key=value config files: keys without a section belong to the
// subcommand being run.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto subs = app_->get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {subs.front()->get_name()};
    }
    return items;
  }

 private:
  CLI::App* app_;
};

std::string category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::data: return "data";
    case ErrorCategory::numeric: return "numeric";
  }
  return "unknown";
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::numeric: return 4;
  }
  return 1;
}

int report_error(const std::string& category, const std::string& message, int code) {
  Json line;
  line["error"] = category;
  line["message"] = message;
  std::cerr << line.dump() << '\n';
  return code;
}

// Effective configuration of a subcommand: every long option with its parsed
// value, falling back to the default.
Json effective_config(const CLI::App& sub) {
  Json cfg;
  cfg["command"] = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help") continue;
    const auto results = opt->reduced_results();
    if (opt->get_type_size_max() == 0) {
      cfg[names.front()] = opt->count() > 0;
    } else if (opt->get_items_expected_max() > 1) {
      cfg[names.front()] = results;
    } else if (!results.empty()) {
      cfg[names.front()] = results.front();
    } else {
      cfg[names.front()] = opt->get_default_str();
    }
  }
  return cfg;
}

Json grid_json(const Grid& g) {
  Json j;
  j["dim"] = g.dim;
  j["n_per_axis"] = g.n_per_axis;
  j["period"] = g.period;
  j["spacing"] = g.spacing();
  return j;
}

Json ladder_json(const ScaleLadder& l, const Grid& g) {
  Json j;
  j["top_radius"] = l.top_radius;
  j["levels"] = l.levels;
  j["radii"] = l.radii();
  j["log_weight"] = ScaleLadder::log_weight;
  j["floor_radius"] = l.radius(l.levels - 1);
  j["floor_cells"] = l.radius(l.levels - 1) / g.spacing();
  return j;
}

Json mollifier_json() {
  Json j;
  j["profile"] = std::string(Mollifier::profile);
  j["normalization"] = "sampled_unit_sum";
  return j;
}

Json index_json(const Grid& g, std::size_t flat) {
  const Index idx = grid_index(g, flat);
  Json j = Json::array({idx[0]});
  if (g.dim == 2) j.push_back(idx[1]);
  return j;
}

Json header(const std::string& format, const Json& config) {
  Json j;
  j["format"] = format;
  j["config"] = config;
  return j;
}

void write_json(const std::string& path, const Json& j) { write_atomic(path, j.dump(2) + "\n"); }

std::string csv_preamble(const std::string& format, const Json& config,
                         const std::string& columns) {
  return "# format=" + format + "\n# config=" + config.dump() + "\n" + columns + "\n";
}

std::string index_columns(const Grid& g) { return g.dim == 1 ? "i0" : "i0,i1"; }

std::string index_cells(const Grid& g, std::size_t flat) {
  const Index idx = grid_index(g, flat);
  std::string s = std::to_string(idx[0]);
  if (g.dim == 2) s += "," + std::to_string(idx[1]);
  return s;
}

ScaleLadder ladder_for(const Grid& g, double top, int levels) {
  const double t = top > 0.0 ? top : g.period / 4.0;
  if (levels > 0) return make_ladder(g, t, levels);
  int count = 0;
  while (std::ldexp(t, -count) >= 4.0 * g.spacing() * (1.0 - 1e-12)) ++count;
  return make_ladder(g, t, count);
}

// ---------------------------------------------------------------- commands

struct Generate {
  std::string family;
  int dim = 1;
  int n = 1024;
  double period = 1.0;
  double gamma = 0.5;
  double beta_w = 0.5;
  int levels = 8;
  double alpha0 = 0.5;
  std::uint64_t seed = 7;
  int cells = 64;
  int frequency = 1;
  std::string out;
};

struct FieldInput {
  std::string field;
  std::string out;
};

struct Coeffs : FieldInput {
  std::string kind = "nu0";
  double top_radius = 0.0;
  int levels = 0;
  std::string meta;
};

struct Sqfn : FieldInput {
  double alpha = 0.5;
  std::string kind;
  double top_radius = 0.0;
  int levels = 0;
  int center_stride = 1;
  std::string csv;
};

struct Bmo : FieldInput {
  double alpha = 0.0;
  double min_radius_cells = 2.0;
  int center_stride = 1;
  double holder = 0.0;
};

struct Strichartz : FieldInput {
  double alpha = 0.5;
  std::string order = "second";
  int top_side = 0;
  int min_side = 4;
  int center_stride = 1;
};

struct FracDeriv : FieldInput {
  double alpha = 0.5;
  bool inverse = false;
};

struct Compare : FieldInput {
  std::vector<double> alphas;
  double top_radius = 0.0;
  int levels = 0;
  int center_stride = 1;
  int bmo_center_stride = 1;
  double min_radius_cells = 2.0;
};

struct Beta {
  std::string cloud;
  std::string field;
  bool graph = false;
  int ambient_dim = 2;
  int k = 1;
  std::vector<double> radii;
  std::vector<double> center;
  int center_stride = 1;
  double top_radius = 0.0;
  int levels = 0;
  std::string out;
  std::string meta;
};

void run_generate(const Generate& o, const Json& cfg) {
  CorpusSpec spec;
  spec.family = family_from_string(o.family);
  spec.grid = make_grid(o.dim, o.n, o.period);
  spec.gamma = o.gamma;
  spec.beta_w = o.beta_w;
  spec.levels = o.levels;
  spec.alpha0 = o.alpha0;
  spec.seed = o.seed;
  spec.cells = o.cells;
  spec.frequency = o.frequency;
  (void)cfg;
  save_field(o.out, generate(spec), to_string(spec.family), parameters(spec));
}

void run_coeffs(const Coeffs& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  const auto ladder = ladder_for(g, o.top_radius, o.levels);
  const auto kind = coefficient_kind_from_string(o.kind);
  const auto m = coefficient_matrix(file.field, ladder, kind);

  std::string text = csv_preamble("ialpha-coeffs-csv/1", cfg, index_columns(g) + ",radius,value");
  for (std::size_t c = 0; c < g.size(); ++c) {
    const std::string idx = index_cells(g, c);
    for (int j = 0; j < ladder.levels; ++j) {
      text += idx + "," + format_double(ladder.radius(j)) + "," + format_double(m.at(c, j)) + "\n";
    }
  }
  write_atomic(o.out, text);

  Json meta = header("ialpha-coeffs/1", cfg);
  meta["grid"] = grid_json(g);
  meta["ladder"] = ladder_json(ladder, g);
  meta["kind"] = std::string(to_string(kind));
  meta["mollifier"] = mollifier_json();
  meta["source_family"] = file.family;
  meta["rows"] = g.size() * static_cast<std::size_t>(ladder.levels);
  write_json(o.meta.empty() ? o.out + ".json" : o.meta, meta);
}

void run_sqfn(const Sqfn& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  const auto ladder = ladder_for(g, o.top_radius, o.levels);
  const auto kind = o.kind.empty() ? standard_kind(o.alpha) : coefficient_kind_from_string(o.kind);
  const auto m = coefficient_matrix(file.field, ladder, kind);
  const auto rep = carleson_constant(m, o.alpha, strided_centers(g, o.center_stride), ladder.radii());

  Json j = header("ialpha-sqfn/1", cfg);
  j["grid"] = grid_json(g);
  j["ladder"] = ladder_json(ladder, g);
  j["mollifier"] = mollifier_json();
  j["alpha"] = rep.alpha;
  j["kind"] = std::string(to_string(rep.kind));
  j["standard_pairing"] = rep.standard_pairing;
  j["lower_bound"] = rep.lower_bound;
  j["floor_radius"] = rep.floor_radius;
  j["constant"] = rep.constant;
  const auto& arg = rep.per_window[rep.argmax];
  j["argmax"] = {{"center", index_json(g, arg.center)}, {"top_radius", arg.top_radius}};
  Json rows = Json::array();
  std::string csv = csv_preamble("ialpha-sqfn-csv/1", cfg,
                                 index_columns(g) + ",top_radius,integral,normalized");
  for (const auto& w : rep.per_window) {
    rows.push_back({{"center", index_json(g, w.center)},
                    {"top_radius", w.top_radius},
                    {"integral", w.integral},
                    {"normalized", w.normalized}});
    csv += index_cells(g, w.center) + "," + format_double(w.top_radius) + "," +
           format_double(w.integral) + "," + format_double(w.normalized) + "\n";
  }
  j["per_window"] = std::move(rows);
  write_json(o.out, j);
  if (!o.csv.empty()) write_atomic(o.csv, csv);
}

void run_bmo(const Bmo& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  const SampledField target = o.alpha > 0.0 ? fractional_derivative(file.field, o.alpha) : file.field;
  const auto radii = dyadic_radii(g, o.min_radius_cells * g.spacing());
  if (radii.empty()) throw InvalidArgument("--min-radius-cells leaves no radius below period/4");
  const auto windows = window_family(g, radii, o.center_stride);
  const auto rep = bmo_norm(target, windows);

  Json j = header("ialpha-bmo/1", cfg);
  j["grid"] = grid_json(g);
  j["operand"] = o.alpha > 0.0 ? "fractional_derivative" : "field";
  j["family"] = {{"radii", radii}, {"center_stride", o.center_stride}, {"ball", "open"}};
  j["lower_bound"] = rep.lower_bound;
  j["norm"] = rep.norm;
  const auto& arg = rep.per_window[rep.argmax];
  j["argmax"] = {{"center", index_json(g, arg.center)}, {"radius", arg.radius}};
  if (o.holder > 0.0) j["holder_seminorm"] = holder_seminorm(file.field, o.holder, o.center_stride);
  Json rows = Json::array();
  for (const auto& w : rep.per_window) {
    rows.push_back({{"center", index_json(g, w.center)},
                    {"radius", w.radius},
                    {"oscillation", w.oscillation}});
  }
  j["per_window"] = std::move(rows);
  write_json(o.out, j);
}

void run_strichartz(const Strichartz& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  const int top = o.top_side > 0 ? o.top_side : g.n_per_axis / 4;
  const auto cubes = cube_family(g, top, o.min_side, o.center_stride);
  StrichartzReport rep;
  if (o.order == "first") {
    rep = strichartz_first(file.field, o.alpha, cubes);
  } else if (o.order == "second") {
    rep = strichartz_second(file.field, o.alpha, cubes);
  } else {
    throw InvalidArgument("--order must be first or second");
  }
  Json j = header("ialpha-strichartz/1", cfg);
  j["grid"] = grid_json(g);
  j["alpha"] = rep.alpha;
  j["order"] = std::string(to_string(rep.order));
  std::vector<int> sides;
  for (int m = top; m >= o.min_side; m /= 2) sides.push_back(m);
  j["family"] = {{"side_cells", sides}, {"center_stride", o.center_stride}, {"weight", "|y|"}};
  j["lower_bound"] = rep.lower_bound;
  j["B"] = rep.B;
  Json rows = Json::array();
  for (const auto& e : rep.per_cube) {
    rows.push_back({{"center", index_json(g, e.center)}, {"side", e.side}, {"value", e.value}});
  }
  j["per_cube"] = std::move(rows);
  write_json(o.out, j);
}

void run_fracderiv(const FracDeriv& o, const Json& cfg) {
  (void)cfg;
  const auto file = load_field(o.field);
  const auto out = o.inverse ? riesz_potential(file.field, o.alpha)
                             : fractional_derivative(file.field, o.alpha);
  save_field(o.out, out, o.inverse ? "riesz_potential" : "fractional_derivative",
             {{"alpha", format_double(o.alpha)}, {"source_family", file.family}});
}

void run_compare(const Compare& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  ExperimentOptions opt;
  opt.ladder = ladder_for(g, o.top_radius, o.levels);
  opt.center_stride = o.center_stride;
  opt.bmo_center_stride = o.bmo_center_stride;
  opt.bmo_min_radius_cells = o.min_radius_cells;

  Json j = header("ialpha-compare/1", cfg);
  j["grid"] = grid_json(g);
  j["ladder"] = ladder_json(*opt.ladder, g);
  j["mollifier"] = mollifier_json();
  Json records = Json::array();
  for (double a : o.alphas) {
    const auto rec = comparability_experiment(file.field, a, opt);
    Json r;
    r["alpha"] = rec.alpha;
    r["kind"] = std::string(to_string(rec.kind));
    r["C_sq"] = rec.c_sq;
    r["bmo_sq"] = rec.bmo_sq;
    r["ratio_defined"] = rec.ratio_defined;
    r["ratio"] = rec.ratio_defined ? Json(rec.ratio) : Json(nullptr);
    r["bmo_radii"] = rec.bmo_radii;
    r["lower_bounds"] = true;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  write_json(o.out, j);
}

void run_beta_graph(const Beta& o, const Json& cfg) {
  const auto file = load_field(o.field);
  const Grid& g = file.field.grid();
  const auto ladder = ladder_for(g, o.top_radius, o.levels);
  const auto rec = graph_beta_vs_nu1(file.field, ladder);
  std::string text = csv_preamble("ialpha-beta-graph-csv/1", cfg,
                                  index_columns(g) + ",radius,beta,nu1,ratio");
  for (std::size_t c = 0; c < g.size(); ++c) {
    const std::string idx = index_cells(g, c);
    for (int jl = 0; jl < ladder.levels; ++jl) {
      const std::size_t i = c * static_cast<std::size_t>(ladder.levels) + static_cast<std::size_t>(jl);
      text += idx + "," + format_double(ladder.radius(jl)) + "," + format_double(rec.beta.values[i]) +
              "," + format_double(rec.nu1.values[i]) + "," + format_double(rec.ratio[i]) + "\n";
    }
  }
  write_atomic(o.out, text);
  Json meta = header("ialpha-beta/1", cfg);
  meta["mode"] = "graph";
  meta["grid"] = grid_json(g);
  meta["ladder"] = ladder_json(ladder, g);
  meta["lipschitz"] = rec.lipschitz;
  meta["undersampled_windows"] = rec.undersampled;
  meta["surface_weight"] = "h^d*sqrt(1+|grad f|^2)";
  meta["ratio_floor"] = GraphBetaRecord::ratio_floor;
  write_json(o.meta.empty() ? o.out + ".json" : o.meta, meta);
}

void run_beta_cloud(const Beta& o, const Json& cfg) {
  std::ifstream in(o.cloud);
  if (!in) throw DataError("io: cannot open " + o.cloud);
  const auto file = read_cloud(in, o.ambient_dim, o.cloud);
  const auto& cloud = file.cloud;
  if (o.radii.empty()) throw InvalidArgument("--radius is required in cloud mode");

  std::vector<std::vector<double>> centers;
  std::vector<std::string> labels;
  if (!o.center.empty()) {
    if (static_cast<int>(o.center.size()) != o.ambient_dim) {
      throw InvalidArgument("--center needs " + std::to_string(o.ambient_dim) + " coordinates");
    }
    centers.push_back(o.center);
    labels.push_back("-1");
  } else {
    if (o.center_stride < 1) throw InvalidArgument("--center-stride must be >= 1");
    for (std::size_t i = 0; i < cloud.size(); i += static_cast<std::size_t>(o.center_stride)) {
      centers.emplace_back(cloud.point(i), cloud.point(i) + o.ambient_dim);
      labels.push_back(std::to_string(i));
    }
  }
  std::string text = csv_preamble("ialpha-beta-cloud-csv/1", cfg, "point,radius,beta,count");
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (double r : o.radii) {
      const auto res = beta2k(cloud, centers[c], r, o.k);
      text += labels[c] + "," + format_double(r) + "," + format_double(res.beta) + "," +
              std::to_string(res.fit.count) + "\n";
    }
  }
  write_atomic(o.out, text);
  Json meta = header("ialpha-beta/1", cfg);
  meta["mode"] = "cloud";
  meta["points"] = cloud.size();
  meta["ambient_dim"] = o.ambient_dim;
  meta["k"] = o.k;
  meta["unit_weights_defaulted"] = file.unit_weights_defaulted;
  write_json(o.meta.empty() ? o.out + ".json" : o.meta, meta);
}

void run_beta(const Beta& o, const Json& cfg) {
  if (o.graph) {
    if (o.field.empty()) throw InvalidArgument("--graph needs --field");
    run_beta_graph(o, cfg);
  } else {
    if (o.cloud.empty()) throw InvalidArgument("--cloud or --field with --graph is required");
    run_beta_cloud(o, cfg);
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Multiscale coefficients, square functions and BMO diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; flags override it");
  app.config_formatter(std::make_shared<FlatConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::function<void(const Json&)> action;
  const auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->allow_config_extras(CLI::config_extras_mode::error);
    return sub;
  };
  const auto field_flags = [](CLI::App* sub, FieldInput& o) {
    sub->add_option("--field", o.field, "Input field file")->required();
    sub->add_option("--out", o.out, "Output path")->required();
  };
  const auto ladder_flags = [](CLI::App* sub, double& top, int& levels) {
    sub->add_option("--top-radius", top, "Largest radius (default period/4)");
    sub->add_option("--ladder-levels", levels, "Number of dyadic radii (default down to 4h)");
  };

  Generate gen;
  {
    CLI::App* s = add("generate", "Write a corpus field");
    std::vector<std::string> names;
    for (auto f : {Family::smooth_bump, Family::cusp, Family::weierstrass, Family::sign_jump,
                   Family::log_singularity, Family::riesz_of_noise, Family::sinusoid}) {
      names.emplace_back(to_string(f));
    }
    s->add_option("--family", gen.family)->required()->check(CLI::IsMember(names));
    s->add_option("--dim", gen.dim)->capture_default_str();
    s->add_option("--n", gen.n, "Samples per axis")->capture_default_str();
    s->add_option("--period", gen.period)->capture_default_str();
    s->add_option("--gamma", gen.gamma)->capture_default_str();
    s->add_option("--beta-w", gen.beta_w)->capture_default_str();
    s->add_option("--levels", gen.levels)->capture_default_str();
    s->add_option("--alpha0", gen.alpha0)->capture_default_str();
    s->add_option("--seed", gen.seed)->capture_default_str();
    s->add_option("--cells", gen.cells)->capture_default_str();
    s->add_option("--frequency", gen.frequency)->capture_default_str();
    s->add_option("--out", gen.out)->required();
    s->callback([&] { action = [&](const Json& c) { run_generate(gen, c); }; });
  }

  Coeffs co;
  {
    CLI::App* s = add("coeffs", "Coefficient matrix as CSV plus JSON metadata");
    field_flags(s, co);
    s->add_option("--kind", co.kind)->capture_default_str();
    ladder_flags(s, co.top_radius, co.levels);
    s->add_option("--meta", co.meta, "Metadata path (default <out>.json)");
    s->callback([&] { action = [&](const Json& c) { run_coeffs(co, c); }; });
  }

  Sqfn sq;
  {
    CLI::App* s = add("sqfn", "Carleson square-function report");
    field_flags(s, sq);
    s->add_option("--alpha", sq.alpha)->required();
    s->add_option("--kind", sq.kind, "Coefficient kind (default by alpha)");
    ladder_flags(s, sq.top_radius, sq.levels);
    s->add_option("--center-stride", sq.center_stride)->capture_default_str();
    s->add_option("--csv", sq.csv, "Optional flat CSV");
    s->callback([&] { action = [&](const Json& c) { run_sqfn(sq, c); }; });
  }

  Bmo bm;
  {
    CLI::App* s = add("bmo", "BMO norm over dyadic balls");
    field_flags(s, bm);
    s->add_option("--alpha", bm.alpha, "Apply D_alpha first when > 0")->capture_default_str();
    s->add_option("--min-radius-cells", bm.min_radius_cells)->capture_default_str();
    s->add_option("--center-stride", bm.center_stride)->capture_default_str();
    s->add_option("--holder", bm.holder, "Also report the Hoelder seminorm of this order")
        ->capture_default_str();
    s->callback([&] { action = [&](const Json& c) { run_bmo(bm, c); }; });
  }

  Strichartz st;
  {
    CLI::App* s = add("strichartz", "Strichartz difference functional over cubes");
    field_flags(s, st);
    s->add_option("--alpha", st.alpha)->required();
    s->add_option("--order", st.order)->capture_default_str()->check(CLI::IsMember({"first", "second"}));
    s->add_option("--top-side", st.top_side, "Largest cube side in cells (default n/4)");
    s->add_option("--min-side", st.min_side)->capture_default_str();
    s->add_option("--center-stride", st.center_stride)->capture_default_str();
    s->callback([&] { action = [&](const Json& c) { run_strichartz(st, c); }; });
  }

  FracDeriv fd;
  {
    CLI::App* s = add("fracderiv", "Spectral D_alpha (or I_alpha with --inverse)");
    field_flags(s, fd);
    s->add_option("--alpha", fd.alpha)->required();
    s->add_flag("--inverse", fd.inverse);
    s->callback([&] { action = [&](const Json& c) { run_fracderiv(fd, c); }; });
  }

  Compare cmp;
  {
    CLI::App* s = add("compare", "C_sq against the squared BMO norm of D_alpha f");
    field_flags(s, cmp);
    s->add_option("--alpha", cmp.alphas, "Comma-separated list")->required()->delimiter(',');
    ladder_flags(s, cmp.top_radius, cmp.levels);
    s->add_option("--center-stride", cmp.center_stride)->capture_default_str();
    s->add_option("--bmo-center-stride", cmp.bmo_center_stride)->capture_default_str();
    s->add_option("--min-radius-cells", cmp.min_radius_cells)->capture_default_str();
    s->callback([&] { action = [&](const Json& c) { run_compare(cmp, c); }; });
  }

  Beta be;
  {
    CLI::App* s = add("beta", "beta_{2,k} numbers of a cloud or of a field graph");
    s->add_option("--cloud", be.cloud, "Point file, one point per line");
    s->add_option("--field", be.field, "Field file (with --graph)");
    s->add_flag("--graph", be.graph);
    s->add_option("--ambient-dim", be.ambient_dim)->capture_default_str();
    s->add_option("--k", be.k)->capture_default_str();
    s->add_option("--radius", be.radii, "Comma-separated radii (cloud mode)")->delimiter(',');
    s->add_option("--center", be.center, "Comma-separated center (cloud mode)")->delimiter(',');
    s->add_option("--center-stride", be.center_stride)->capture_default_str();
    ladder_flags(s, be.top_radius, be.levels);
    s->add_option("--out", be.out)->required();
    s->add_option("--meta", be.meta, "Metadata path (default <out>.json)");
    s->callback([&] { action = [&](const Json& c) { run_beta(be, c); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), 2);
  }

  try {
    action(effective_config(*app.get_subcommands().front()));
  } catch (const Error& e) {
    return report_error(category_name(e.category()), e.what(), exit_code(e.category()));
  } catch (const std::exception& e) {
    return report_error("numeric", e.what(), 4);
  }
  return 0;
}

}  // namespace ialpha::cli
