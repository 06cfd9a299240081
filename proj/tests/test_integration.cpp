#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frechet_kit/cli.hpp"
#include "frechet_kit/io.hpp"
#include "frechet_kit/oracles.hpp"

using namespace fk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string write_curves(const std::string& name, const std::vector<Curve>& cs) {
  auto dir = fs::temp_directory_path() / "frechet_kit_integration";
  fs::create_directories(dir);
  auto p = (dir / name).string();
  std::ofstream(p) << curves_to_json(cs);
  return p;
}

Curve from_json(const json& pts) {
  std::vector<Point> v;
  for (const auto& p : pts) {
    std::vector<double> xs = p.get<std::vector<double>>();
    v.push_back(Point::from_range(xs.begin(), xs.end()));
  }
  return Curve(v);
}

json run_json(const std::vector<std::string>& args, int expect_code) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  REQUIRE_MESSAGE(code == expect_code, err.str());
  return json::parse(out.str());
}

}  // namespace

TEST_CASE("planted instance through the repr command, checked in input units") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PlantOptions o;
    o.seed = seed;
    o.n = 3;
    o.m = 4;
    o.ell_star = 3;
    auto pl = plant_instance(o);
    // Scale and shift so normalization has something to undo.
    std::vector<Curve> raw;
    for (const auto& c : pl.inst.curves) {
      std::vector<Point> v;
      for (const auto& p : c.vertices()) v.push_back(p * 7.0 + Point{100.0, -3.0});
      raw.emplace_back(v);
    }
    auto path = write_curves("planted.json", raw);
    std::string th = std::to_string(7.0 * pl.inst.deltas[0]);
    auto doc = run_json({"repr", path, "--ell", "3", "--eps", "0.5", "--thresholds", th}, kExitOk);
    REQUIRE(doc["status"] == "curve");
    Curve sigma = from_json(doc["curve"]);
    CHECK(sigma.size() <= 3);
    auto inst = QInstance::make(raw, std::vector<double>(raw.size(), 7.0 * pl.inst.deltas[0]), 3, 0.5);
    CHECK(verify_candidate(sigma, inst, 0.5 + 1e-9));
  }
}

TEST_CASE("simplify output fed back in does not grow") {
  std::vector<Point> v;
  for (int i = 0; i <= 12; ++i) v.push_back(Point{0.5 * i, (i / 4) % 2 ? 1.0 - 0.25 * (i % 4) : 0.25 * (i % 4)});
  auto path = write_curves("wave.json", {Curve(v)});
  auto first = run_json({"simplify", path, "--delta", "0.1", "--alpha", "0.5", "--eps", "0.25"}, kExitOk);
  CHECK(first["frechet_check"]["pass"] == true);
  Curve s1 = from_json(first["vertices"]);
  auto path2 = write_curves("wave_s.json", {s1});
  auto second = run_json({"simplify", path2, "--delta", "0.1", "--alpha", "0.5", "--eps", "0.25"}, kExitOk);
  CHECK(second["vertex_count"].get<int>() <= first["vertex_count"].get<int>());
}

TEST_CASE("cluster command recovers a planted two-cluster assignment") {
  auto pc = plant_clusters(2, 5, 4, 2, 2, 1.0, 0.1, 12);
  auto path = write_curves("clusters.json", pc.curves);
  auto doc = run_json({"cluster", path, "--k", "2", "--ell", "2", "--mu", "0.2", "--eps", "0.5", "--seed", "4"},
                      kExitOk);
  auto got = doc["assignment"].get<std::vector<int>>();
  REQUIRE(got.size() == pc.assignment.size());
  bool same = true, swapped = true;
  for (std::size_t t = 0; t < got.size(); ++t) {
    same &= got[t] == pc.assignment[t];
    swapped &= got[t] == 1 - pc.assignment[t];
  }
  CHECK((same || swapped));
  CHECK(doc["centers"].size() == 2);
  CHECK(doc["cost"].get<double>() <= 1.5 * pc.planted_cost);
}
