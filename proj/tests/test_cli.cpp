#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ialpha/corpus.hpp"
#include "ialpha/report.hpp"

using namespace ialpha;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "ialpha_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code = -1;
  std::string err;
};

Result cli(const std::string& args) {
  const std::string err = path("stderr.txt");
  const std::string cmd = std::string(IALPHA_CLI) + " " + args + " >" + path("stdout.txt") + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

// Data rows of a CSV written by the tool (comment lines and the header dropped).
std::vector<std::vector<std::string>> csv_rows(const std::string& p) {
  std::ifstream in(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

double num(const std::string& s) {
  double v = 0.0;
  REQUIRE(parse_double(s, v));
  return v;
}

}  // namespace

TEST_CASE("generate writes a loadable, deterministic field") {
  REQUIRE(cli("generate --family smooth_bump --n 4096 --period 1 --out " + path("bump.fld")).code == 0);
  const auto f = load_field(path("bump.fld"));
  CHECK(f.field.size() == 4096);
  CHECK(f.family == "smooth_bump");
  CorpusSpec spec;
  spec.grid = make_grid(1, 4096, 1.0);
  const auto direct = generate(spec);
  for (std::size_t i = 0; i < direct.size(); ++i) CHECK(f.field[i] == direct[i]);

  REQUIRE(cli("generate --family smooth_bump --n 4096 --period 1 --out " + path("bump2.fld")).code == 0);
  CHECK(slurp(path("bump.fld")) == slurp(path("bump2.fld")));

  const auto bad = cli("generate --family gaussian --out " + path("x.fld"));
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--family") != std::string::npos);
  const auto parsed = Json::parse(bad.err);
  CHECK(parsed["error"] == "usage");

  CHECK(cli("generate --family cusp --gamma 2 --out " + path("x.fld")).code == 2);
  CHECK(cli("generate --family cusp --bogus 2 --out " + path("x.fld")).code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("config file with flag precedence") {
  {
    std::ofstream cfg(path("gen.ini"));
    cfg << "family=weierstrass\nn=256\nbeta-w=0.4\nlevels=5\n";
  }
  REQUIRE(cli("generate --config " + path("gen.ini") + " --n 512 --out " + path("w.fld")).code == 0);
  const auto w = load_field(path("w.fld"));
  CHECK(w.field.size() == 512);
  CHECK(w.family == "weierstrass");
  CHECK(w.params.at("beta_w") == "0.4");
  CHECK(w.params.at("levels") == "5");
  REQUIRE(cli("generate --n 512 --out " + path("w2.fld") + " --config " + path("gen.ini")).code == 0);
  CHECK(slurp(path("w.fld")) == slurp(path("w2.fld")));
  {
    std::ofstream cfg(path("bad.ini"));
    cfg << "family=weierstrass\nunknown-key=1\n";
  }
  CHECK(cli("generate --config " + path("bad.ini") + " --out " + path("w3.fld")).code == 2);
}

TEST_CASE("coeffs: shape, zeros and metadata") {
  REQUIRE(cli("generate --family sinusoid --n 64 --out " + path("sin.fld")).code == 0);
  REQUIRE(cli("coeffs --field " + path("sin.fld") + " --kind nu1 --out " + path("sin.csv")).code == 0);
  const auto rows = csv_rows(path("sin.csv"));
  const auto meta = Json::parse(slurp(path("sin.csv.json")));
  CHECK(meta["format"] == "ialpha-coeffs/1");
  CHECK(meta["config"]["kind"] == "nu1");
  const int levels = meta["ladder"]["levels"];
  CHECK(rows.size() == static_cast<std::size_t>(64 * levels));
  const auto text = slurp(path("sin.csv"));
  CHECK(text.rfind("# format=ialpha-coeffs-csv/1\n# config=", 0) == 0);

  // Constant field.
  {
    const Grid g = make_grid(2, 16, 1.0);
    save_field(path("const.fld"), sample(g, [](const Point&) { return 2.5; }));
  }
  REQUIRE(cli("coeffs --field " + path("const.fld") + " --kind nu0 --out " + path("const.csv")).code == 0);
  const auto crows = csv_rows(path("const.csv"));
  CHECK(crows.size() == 256u);  // 16^2 centers x 1 level (0.25 down to 4h)
  for (const auto& r : crows) {
    REQUIRE(r.size() == 4);
    CHECK(num(r[3]) == 0.0);
  }

  // Affine away from the wrap: nu1 vanishes at interior centers.
  {
    const Grid g = make_grid(1, 256, 1.0);
    save_field(path("lin.fld"), sample(g, [](const Point& x) { return 0.3 + 1.7 * (x[0] - 0.5); }));
  }
  REQUIRE(cli("coeffs --field " + path("lin.fld") + " --kind nu1 --out " + path("lin.csv")).code == 0);
  int interior = 0;
  for (const auto& r : csv_rows(path("lin.csv"))) {
    const int i = std::stoi(r[0]);
    const double radius = num(r[1]);
    if (std::abs(i / 256.0 - 0.5) + radius < 0.5 - 1e-9) {
      ++interior;
      CHECK(std::abs(num(r[2])) <= 1e-10);
    }
  }
  CHECK(interior > 0);

  CHECK(cli("coeffs --field " + path("missing.fld") + " --out " + path("m.csv")).code == 3);
  {
    std::ofstream bad(path("trunc.fld"));
    bad << "# ialpha-field/1 dim=1 n_per_axis=8 period=1\n1\n2\n";
  }
  const auto trunc = cli("coeffs --field " + path("trunc.fld") + " --out " + path("t.csv"));
  CHECK(trunc.code == 3);
  CHECK(trunc.err.find("length_mismatch") != std::string::npos);
  CHECK(cli("coeffs --field " + path("sin.fld") + " --kind nu7 --out " + path("t.csv")).code == 2);
}

TEST_CASE("compare: constant and bump") {
  REQUIRE(cli("compare --field " + path("const.fld") + " --alpha 0.5 --out " + path("cc.json")).code == 0);
  const auto c = Json::parse(slurp(path("cc.json")));
  CHECK(c["format"] == "ialpha-compare/1");
  REQUIRE(c["records"].size() == 1);
  CHECK(c["records"][0]["C_sq"] == 0.0);
  CHECK(c["records"][0]["bmo_sq"] == 0.0);
  CHECK(c["records"][0]["ratio"].is_null());
  CHECK(c["records"][0]["ratio_defined"] == false);

  REQUIRE(cli("generate --family smooth_bump --n 512 --out " + path("b512.fld")).code == 0);
  REQUIRE(cli("compare --field " + path("b512.fld") + " --alpha 0.5,1.0,1.5 --out " + path("bc.json")).code == 0);
  const auto b = Json::parse(slurp(path("bc.json")));
  REQUIRE(b["records"].size() == 3);
  for (const auto& r : b["records"]) {
    CHECK(r["ratio_defined"] == true);
    CHECK(r["ratio"].get<double>() > 0.0);
    CHECK(std::isfinite(r["ratio"].get<double>()));
  }
  CHECK(b["records"][0]["kind"] == "nu0");
  CHECK(b["records"][1]["kind"] == "nu1");
  const auto first = slurp(path("bc.json"));
  REQUIRE(cli("compare --field " + path("b512.fld") + " --alpha 0.5,1.0,1.5 --out " + path("bc.json")).code == 0);
  CHECK(slurp(path("bc.json")) == first);
  CHECK(cli("compare --field " + path("b512.fld") + " --alpha 2.5 --out " + path("bc2.json")).code == 2);
}

TEST_CASE("beta: cloud mode") {
  {
    std::ofstream line(path("line.txt"));
    for (int i = 0; i < 40; ++i) line << 0.1 * i << " " << 0.5 - 0.2 * i << "\n";
    std::ofstream circle(path("circle.txt"));
    circle.precision(17);
    for (int i = 0; i < 20000; ++i) {
      const double t = 2 * std::numbers::pi * i / 20000;
      circle << std::cos(t) << " " << std::sin(t) << " 1\n";
    }
  }
  REQUIRE(cli("beta --cloud " + path("line.txt") + " --ambient-dim 2 --k 1 --radius 0.5,1 --center-stride 5 --out " + path("line.csv")).code == 0);
  const auto rows = csv_rows(path("line.csv"));
  CHECK(rows.size() == 16u);
  for (const auto& r : rows) CHECK(num(r[2]) <= 1e-10);
  CHECK(Json::parse(slurp(path("line.csv.json")))["unit_weights_defaulted"] == true);

  REQUIRE(cli("beta --cloud " + path("circle.txt") + " --ambient-dim 2 --radius 1.0001 --center 0,0 --out " + path("circle.csv")).code == 0);
  const auto crow = csv_rows(path("circle.csv"));
  REQUIRE(crow.size() == 1);
  CHECK(std::abs(num(crow[0][2]) - std::sqrt(0.5)) <= 1e-3);
  CHECK(Json::parse(slurp(path("circle.csv.json")))["unit_weights_defaulted"] == false);

  {
    std::ofstream bad(path("bad.txt"));
    bad << "1 2\n3 4 5 6\n";
  }
  const auto r = cli("beta --cloud " + path("bad.txt") + " --ambient-dim 2 --radius 1 --out " + path("bad.csv"));
  CHECK(r.code == 3);
  CHECK(r.err.find(":2") != std::string::npos);
}

TEST_CASE("beta: graph mode and the remaining commands") {
  REQUIRE(cli("generate --family smooth_bump --n 128 --out " + path("b128.fld")).code == 0);
  REQUIRE(cli("beta --graph --field " + path("b128.fld") + " --ladder-levels 2 --out " + path("g.csv")).code == 0);
  CHECK(csv_rows(path("g.csv")).size() == 256u);
  CHECK(Json::parse(slurp(path("g.csv.json")))["lipschitz"].get<double>() > 0.0);

  REQUIRE(cli("sqfn --field " + path("b128.fld") + " --alpha 0.5 --center-stride 4 --out " + path("s.json")).code == 0);
  const auto s = Json::parse(slurp(path("s.json")));
  CHECK(s["format"] == "ialpha-sqfn/1");
  CHECK(s["constant"].get<double>() > 0.0);

  REQUIRE(cli("bmo --field " + path("b128.fld") + " --holder 0.5 --out " + path("m.json")).code == 0);
  CHECK(Json::parse(slurp(path("m.json")))["norm"].get<double>() > 0.0);

  REQUIRE(cli("strichartz --field " + path("b128.fld") + " --alpha 0.5 --order second --center-stride 8 --out " + path("st.json")).code == 0);
  CHECK(Json::parse(slurp(path("st.json")))["B"].get<double>() > 0.0);

  REQUIRE(cli("fracderiv --field " + path("b128.fld") + " --alpha 0.5 --out " + path("d.fld")).code == 0);
  REQUIRE(cli("fracderiv --field " + path("d.fld") + " --alpha 0.5 --inverse --out " + path("back.fld")).code == 0);
  const auto orig = load_field(path("b128.fld")).field;
  const auto back = load_field(path("back.fld")).field;
  double mean = 0.0;
  for (double v : orig.values()) mean += v;
  mean /= orig.size();
  for (std::size_t i = 0; i < orig.size(); ++i) CHECK(std::abs(back[i] - (orig[i] - mean)) <= 1e-10);
}
