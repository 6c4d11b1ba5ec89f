#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "posmom/cli.hpp"
#include "posmom/figure.hpp"
#include "posmom/scan.hpp"
#include "posmom/table_io.hpp"

using namespace posmom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("posmom-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Data coordinates of a polyline, recovered through the frame metadata.
std::vector<std::pair<double, double>> polyline(const std::string &svg, const std::string &id) {
  std::smatch meta;
  REQUIRE(std::regex_search(svg, meta, std::regex("<metadata id=\"frame\">([^<]*)</metadata>")));
  std::string text = meta[1];
  text = std::regex_replace(text, std::regex("&quot;"), "\"");
  const auto j = nlohmann::json::parse(text);
  const figure::Frame f{j["x_min"], j["x_max"], j["y_min"], j["y_max"],
                        j["left"],  j["right"], j["top"],   j["bottom"]};
  std::smatch m;
  REQUIRE(std::regex_search(svg, m,
                            std::regex("<polyline id=\"" + id + "\"[^>]* points=\"([^\"]*)\"")));
  std::vector<std::pair<double, double>> pts;
  std::istringstream is(m[1].str());
  std::string pair;
  while (is >> pair) {
    const auto comma = pair.find(',');
    pts.emplace_back(f.from_px_x(std::stod(pair.substr(0, comma))),
                     f.from_px_y(std::stod(pair.substr(comma + 1))));
  }
  return pts;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting") {
  CHECK(io::format_number(1.0) == "1.00000000000e+00");
  CHECK(io::format_number(-0.00125) == "-1.25000000000e-03");
  CHECK(std::stod(io::format_number(1.393203929686)) == doctest::Approx(1.393203929686).epsilon(5e-12));
}

TEST_CASE("density: m = 1 on a coarse grid") {
  const Run r = run({"density", "--m", "1", "--min", "-3", "--max", "3", "--step", "0.5"});
  REQUIRE(r.code == cli::exit_ok);
  std::istringstream is(r.out);
  const DensityTable t = io::read_csv(is);
  CHECK(t.size() == 13);
  CHECK(r.out.rfind(std::string(io::csv_header) + "\n", 0) == 0);
  CHECK(t.lambdas[6] == 0.0);
  CHECK(std::abs(t.p[6] - 1.0) < 1e-11);
  CHECK(r.out.find("\n0.00000000000e+00,1.00000000000e+00,") != std::string::npos);
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("density: unsupported closed form is a usage error") {
  const Run r = run({"density", "--m", "2", "--backend", "closed-form"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("m=2") != std::string::npos);
}

TEST_CASE("density: single point") {
  const Run r = run({"density", "--m", "0", "--min", "0", "--max", "0", "--step", "1"});
  REQUIRE(r.code == cli::exit_ok);
  std::istringstream is(r.out);
  const DensityTable t = io::read_csv(is);
  REQUIRE(t.size() == 1);
  CHECK(std::abs(t.p[0] - 1.393) < 0.007);
}

TEST_CASE("density: bad flags") {
  CHECK(run({"density"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "x"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "1", "--bogus"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "1", "--step", "0"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "1", "--min", "2", "--max", "1"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "1", "--format", "xml"}).code == cli::exit_usage);
  CHECK(run({"density", "--m", "1", "--backend", "simpson"}).code == cli::exit_usage);
  CHECK(run({}).code == cli::exit_usage);
  CHECK(run({"frobnicate"}).code == cli::exit_usage);
}

TEST_CASE("density: files, manifest and JSON") {
  const fs::path dir = scratch_dir("density");
  const std::string csv = (dir / "m3.csv").string();
  REQUIRE(run({"density", "--m", "3", "--min", "-1", "--max", "1", "--step", "0.25", "--out", csv})
              .code == cli::exit_ok);
  std::ifstream in(csv);
  const DensityTable t = io::read_csv(in);
  CHECK(t.size() == 9);
  const auto manifest = nlohmann::json::parse(slurp(csv + ".manifest.json"));
  CHECK(manifest["m_values"] == nlohmann::json::array({3}));
  CHECK(manifest["backend"] == "quadrature");
  CHECK(manifest["tool_version"] == cli::tool_version);
  CHECK(manifest["config"]["abs_tol"] == 1e-10);

  const Run j = run({"density", "--m", "3", "--min", "-1", "--max", "1", "--step", "0.25",
                     "--format", "json", "--backend", "closed-form"});
  REQUIRE(j.code == cli::exit_ok);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["manifest"]["backend"] == "closed-form");
  REQUIRE(doc["columns"]["p"].size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(doc["columns"]["p"][i].get<double>() == doctest::Approx(t.p[i]).epsilon(1e-9));
  fs::remove_all(dir);
}

TEST_CASE("density: numerical failure exits 3 and names lambda") {
  const Run r = run({"density", "--m", "1", "--min", "199", "--max", "201", "--step", "1"});
  CHECK(r.code == cli::exit_numerical);
  CHECK(r.err.find("lambda=2.01000000000e+02") != std::string::npos);
}

TEST_CASE("csv round trip and malformed input") {
  const DensityTable t = scan::scan_density(2, -1.0, 1.0, 0.5);
  std::ostringstream os;
  io::write_csv(t, os);
  std::istringstream is(os.str());
  const DensityTable back = io::read_csv(is);
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.p[i] == doctest::Approx(t.p[i]).epsilon(1e-11));
    CHECK(back.alpha2[i] == doctest::Approx(t.alpha2[i]).epsilon(1e-11));
  }
  std::istringstream bad("lambda,p\n1,2\n");
  CHECK_THROWS(io::read_csv(bad));
  std::istringstream garbage(std::string(io::csv_header) + "\n1,2,3,x,5,6\n");
  CHECK_THROWS(io::read_csv(garbage));
}

TEST_CASE("determinism: identical flags, identical bytes") {
  const fs::path dir = scratch_dir("determinism");
  for (const char *name : {"a.csv", "b.csv"})
    REQUIRE(run({"density", "--m", "5", "--min", "-3", "--max", "3", "--step", "0.05", "--out",
                 (dir / name).string()})
                .code == cli::exit_ok);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  fs::remove_all(dir);
}

TEST_CASE("figure: bad index") {
  CHECK(run({"figure", "--fig", "7", "--out", "/tmp/posmom-none.svg"}).code == cli::exit_usage);
  CHECK(run({"figure", "--fig", "0", "--out", "/tmp/posmom-none.svg"}).code == cli::exit_usage);
  CHECK(run({"figure", "--fig", "1"}).code == cli::exit_usage);
}

TEST_CASE("figure 4: three curves, m = 1 peaks at 1") {
  const fs::path dir = scratch_dir("fig4");
  const std::string svg_path = (dir / "fig4.svg").string();
  REQUIRE(run({"figure", "--fig", "4", "--out", svg_path}).code == cli::exit_ok);
  const std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(std::regex_search(svg, std::regex("<svg[^>]*version=\"1.1\"")));
  const std::regex polyline_tag("<polyline ");
  const std::ptrdiff_t curves = std::distance(
      std::sregex_iterator(svg.begin(), svg.end(), polyline_tag), std::sregex_iterator());
  CHECK(curves == 3);
  CHECK(svg.find("id=\"m1-p\" stroke-dasharray=\"8,4\"") != std::string::npos);
  CHECK(svg.find("id=\"m3-p\" stroke-dasharray=\"1.5,3\"") != std::string::npos);
  CHECK(std::regex_search(svg, std::regex("id=\"m5-p\" points=")));

  double peak = 0.0, at = 0.0;
  for (auto [x, y] : polyline(svg, "m1-p"))
    if (y > peak) {
      peak = y;
      at = x;
    }
  CHECK(std::abs(peak - 1.0) <= 0.01);
  CHECK(std::abs(at) < 0.02);
  for (int m : {1, 3, 5})
    CHECK(fs::exists(svg_path + ".m" + std::to_string(m) + ".csv"));
  fs::remove_all(dir);
}

TEST_CASE("figure 1: two densities, neither with a node") {
  const fs::path dir = scratch_dir("fig1");
  const std::string svg_path = (dir / "fig1.svg").string();
  REQUIRE(run({"figure", "--fig", "1", "--out", svg_path}).code == cli::exit_ok);
  const std::string svg = slurp(svg_path);
  CHECK(svg.find("id=\"m0-p\"") != std::string::npos);
  CHECK(svg.find("id=\"m2-p\"") != std::string::npos);
  CHECK(svg.find("id=\"m2-alpha2\" stroke-dasharray=\"1.5,3\"") != std::string::npos);
  CHECK(svg.find("id=\"m2-beta2\" stroke-dasharray=\"8,4\"") != std::string::npos);
  for (int m : {0, 2}) {
    std::ifstream in(svg_path + ".m" + std::to_string(m) + ".csv");
    const DensityTable t = io::read_csv(in);
    const ExtremaReport e = scan::count_extrema(t);
    CHECK(e.n_near_zero_minima == 0);
    // p_2 dips at lambda = 0 but stays well above zero.
    const double top = *std::max_element(t.p.begin(), t.p.end());
    for (double v : e.minimum_values)
      CHECK(v > 0.5 * top);
  }
  fs::remove_all(dir);
}

TEST_CASE("figure metadata") {
  CHECK(figure::figure_m_values(5) == std::vector<int>{40});
  CHECK(figure::figure_positive_half(6));
  CHECK_FALSE(figure::figure_positive_half(2));
  figure::Plot plot;
  plot.series.push_back({"a", "a & b", figure::LineStyle::Solid, {0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}});
  const figure::Frame f = figure::compute_frame(plot);
  CHECK(f.from_px_x(f.to_px_x(1.3)) == doctest::Approx(1.3));
  CHECK(f.from_px_y(f.to_px_y(0.7)) == doctest::Approx(0.7));
  const std::string svg = figure::render_svg(plot);
  CHECK(svg.find("a &amp; b") != std::string::npos);
  CHECK(svg.find("a & b") == std::string::npos);
}

TEST_CASE("verify: injected tolerance fault fails with a named check") {
  const Run r = run({"verify", "--quick", "--m-set", "1", "--tolerance-override", "1e-30"});
  CHECK(r.code == cli::exit_verification_failed);
  CHECK(r.out.find("FAIL  closed-form") != std::string::npos);
  CHECK(r.out.find("SOME CHECKS FAILED") != std::string::npos);
}

TEST_CASE("verify: bad flags") {
  CHECK(run({"verify", "--m-set", "a,b"}).code == cli::exit_usage);
  CHECK(run({"verify", "--tolerance-override"}).code == cli::exit_usage);
}

} // TEST_SUITE
