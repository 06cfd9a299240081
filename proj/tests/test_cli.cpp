#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frechet_kit/cli.hpp"
#include "frechet_kit/errors.hpp"
#include "frechet_kit/io.hpp"
#include "frechet_kit/svg.hpp"

using namespace fk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto p = fs::temp_directory_path() / "frechet_kit_test_cli";
  fs::create_directories(p);
  return p;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("JSON curves parse, collapse duplicates and round-trip") {
  auto cs = parse_curves_json(R"({"d":2,"curves":[[[0,0],[0,0],[1,2]],[[3,4]]]})");
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].size() == 2);
  CHECK(cs[1].size() == 1);
  auto again = parse_curves_json(curves_to_json(cs));
  REQUIRE(again.size() == 2);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (int j = 0; j < cs[i].size(); ++j) CHECK(dist(cs[i][j], again[i][j]) == 0.0);
}

TEST_CASE("JSON errors carry positions") {
  try {
    parse_curves_json("{\"d\":2,\"curves\":[[[0,0],[1,]]]}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_curves_json(R"({"d":2,"curves":[[[0,0],[1,2,3]]]})"), DimensionMismatch);
  CHECK_THROWS_AS(parse_curves_json(R"({"curves":[]})"), ParseError);
}

TEST_CASE("CSV curves: header, comments, errors with line and column") {
  Curve c = parse_curve_csv("x,y\n# note\n0,0\n1,1\n1,1\n2,0\n");
  CHECK(c.size() == 3);
  Curve again = parse_curve_csv(curve_to_csv(c));
  for (int j = 0; j < c.size(); ++j) CHECK(dist(c[j], again[j]) == 0.0);
  try {
    parse_curve_csv("0,0\n1,abc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_curve_csv("0,0\n1,1,1\n"), DimensionMismatch);
}

TEST_CASE("normalization scale is one over the box diameter") {
  std::vector<Curve> cs{Curve({Point{1.0, 1.0}, Point{4.0, 1.0}}), Curve({Point{1.0, 5.0}})};
  auto n = fit_normalization(cs);
  CHECK(n.scale == doctest::Approx(1.0 / 5.0));
  CHECK(dist(n.offset, Point{1.0, 1.0}) == 0.0);
  Point p{4.0, 5.0};
  CHECK(dist(n.invert(n.apply(p)), p) <= 1e-12);
}

TEST_CASE("dist of a file with itself is within the tolerance") {
  auto a = write("a.json", R"({"d":2,"curves":[[[0,0],[1,1],[2,0]]]})");
  auto r = run({"dist", a, a, "--tol", "1e-6"});
  REQUIRE(r.code == kExitOk);
  auto doc = json::parse(r.out);
  CHECK(doc["value"].get<double>() <= 1e-6);
  CHECK(doc["lower"].get<double>() <= doc["upper"].get<double>());
}

TEST_CASE("repr exit codes for curve, null and budget") {
  auto one = write("one.json", R"({"d":2,"curves":[[[0.5,0.5]]]})");
  auto r = run({"repr", one, "--ell", "1", "--thresholds", "0.1"});
  REQUIRE(r.code == kExitOk);
  auto doc = json::parse(r.out);
  CHECK(doc["status"] == "curve");
  CHECK(doc["curve"].size() == 1);

  auto far = write("far.json", R"({"d":2,"curves":[[[0,0],[1,0]],[[30,0],[31,0]]]})");
  r = run({"repr", far, "--ell", "2", "--thresholds", "1,1"});
  CHECK(r.code == kExitNull);
  CHECK(json::parse(r.out)["status"] == "null");

  auto zig = write("zig.json", R"({"d":2,"curves":[[[0,0],[1,0.45],[2,0],[3,0.45],[4,0]]]})");
  r = run({"repr", zig, "--ell", "2", "--thresholds", "0.2", "--budget", "3", "--no-normalize"});
  CHECK(r.code == kExitBudget);
  CHECK(json::parse(r.out)["status"] == "budget_exceeded");
}

TEST_CASE("usage and input errors exit with 1") {
  CHECK(run({}).code == kExitError);
  CHECK(run({"dist", "only_one.json"}).code == kExitError);
  auto r = run({"dist", "/nonexistent/a.json", "/nonexistent/b.json"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("cannot open") != std::string::npos);
  auto bad = write("bad.csv", "0,0\n1,x\n");
  CHECK(run({"simplify", bad, "--delta", "0.1"}).code == kExitError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("simplify and cluster outputs are deterministic, SVG included") {
  auto c = write("c.csv", "0,0\n1,0.1\n2,0\n3,1.5\n4,0\n");
  auto svg1 = (scratch_dir() / "s1.svg").string(), svg2 = (scratch_dir() / "s2.svg").string();
  auto a = run({"simplify", c, "--delta", "0.2", "--svg", svg1});
  auto b = run({"simplify", c, "--delta", "0.2", "--svg", svg2});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(slurp(svg1) == slurp(svg2));
  CHECK(slurp(svg1).rfind("<svg", 0) == 0);
  auto doc = json::parse(a.out);
  CHECK(doc["frechet_check"]["pass"] == true);
  CHECK(doc["frechet_check"]["bound"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("threads flag and environment fallback give the same answer") {
  auto two = write("two.json", R"({"d":2,"curves":[[[0,0],[1,1],[2,0]],[[0,0.2],[1,1.1],[2,0.1]]]})");
  auto base = run({"repr", two, "--ell", "3", "--thresholds", "0.2"});
  auto flag = run({"repr", two, "--ell", "3", "--thresholds", "0.2", "--threads", "2"});
  setenv("FRECHET_KIT_THREADS", "3", 1);
  auto env = run({"repr", two, "--ell", "3", "--thresholds", "0.2"});
  unsetenv("FRECHET_KIT_THREADS");
  CHECK(base.code == kExitOk);
  CHECK(base.out == flag.out);
  CHECK(base.out == env.out);
}

TEST_CASE("svg rendering is stable and draws every element") {
  SvgScene s;
  s.inputs.push_back(Curve({Point{0.0, 0.0}, Point{1.0, 1.0}}));
  s.outputs.push_back(Curve({Point{0.0, 0.1}, Point{1.0, 0.9}}));
  s.cells.push_back({Point{0.0, 0.0}, Point{0.1, 0.1}});
  auto a = render_svg(s), b = render_svg(s);
  CHECK(a == b);
  CHECK(a.find("#999999") != std::string::npos);
  CHECK(a.find("#d62728") != std::string::npos);
  CHECK(a.find("#add8e6") != std::string::npos);
  CHECK_THROWS_AS(emit_svg(s, "/nonexistent/dir/x.svg"), IOError);
}
