#include "frechet_kit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frechet_kit/cluster.hpp"
#include "frechet_kit/errors.hpp"
#include "frechet_kit/instance.hpp"
#include "frechet_kit/io.hpp"
#include "frechet_kit/simplify.hpp"
#include "frechet_kit/svg.hpp"
#include "frechet_kit/twophase.hpp"

namespace fk {

using nlohmann::json;

namespace {

struct Common {
  std::string format = "auto";
  bool no_normalize = false;
  int threads = 0;
  std::string svg;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Input format")->check(CLI::IsMember({"auto", "json", "csv"}));
  cmd->add_flag("--no-normalize", c.no_normalize, "Keep input coordinates as given");
  cmd->add_option("--threads", c.threads, "Worker threads (default: FRECHET_KIT_THREADS or 1)");
  cmd->add_option("--svg", c.svg, "Write a plot to this path");
  cmd->add_option("--out", c.out, "Write JSON here instead of stdout");
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("FRECHET_KIT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::vector<Curve> load_all(const std::vector<std::string>& paths, const std::string& format) {
  std::vector<Curve> all;
  for (const auto& p : paths) {
    auto cs = load_curves(p, format);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  for (const auto& c : all)
    if (c.dim() != all.front().dim()) throw DimensionMismatch("input curves differ in dimension");
  return all;
}

json points(const Curve& c) {
  json a = json::array();
  for (const auto& p : c.vertices()) {
    json q = json::array();
    for (int k = 0; k < p.dim(); ++k) q.push_back(p[k]);
    a.push_back(q);
  }
  return a;
}

json norm_json(const Normalization& n) {
  json o;
  o["scale"] = n.scale;
  json off = json::array();
  for (int k = 0; k < n.offset.dim(); ++k) off.push_back(n.offset[k]);
  o["offset"] = off;
  return o;
}

struct Prepared {
  std::vector<Curve> raw;
  std::vector<Curve> work;
  Normalization norm;
};

Prepared prepare(const std::vector<std::string>& paths, const Common& c) {
  Prepared p;
  p.raw = load_all(paths, c.format);
  if (c.no_normalize) {
    p.norm.offset = Point(p.raw.front().dim());
    p.norm.scale = 1.0;
  } else {
    p.norm = fit_normalization(p.raw);
  }
  for (const auto& r : p.raw) p.work.push_back(p.norm.apply(r));
  return p;
}

void emit(const json& doc, const Common& c, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw IOError("cannot write " + c.out);
  f << text;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    double x = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') throw InvalidArgument("bad threshold \"" + item + "\"");
    v.push_back(x);
  }
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frechet distance toolkit: distances, simplification, representatives, clustering"};
  app.require_subcommand(1);

  Common c_dist, c_simp, c_repr, c_clus;

  std::string dist_a, dist_b;
  double dist_tol = 1e-6;
  auto* dist = app.add_subcommand("dist", "Frechet distance of two curves");
  dist->add_option("A", dist_a)->required();
  dist->add_option("B", dist_b)->required();
  dist->add_option("--tol", dist_tol, "Bracket width")->check(CLI::PositiveNumber);
  add_common(dist, c_dist);

  std::string simp_path;
  double s_delta = 0, s_alpha = 0.5, s_eps = 0.25;
  std::uint64_t s_budget = 100000;
  bool s_strict = false;
  auto* simp = app.add_subcommand("simplify", "Bicriteria simplification of one curve");
  simp->add_option("CURVE", simp_path)->required();
  simp->add_option("--delta", s_delta)->required()->check(CLI::PositiveNumber);
  simp->add_option("--alpha", s_alpha);
  simp->add_option("--eps", s_eps);
  simp->add_option("--budget", s_budget, "Search steps per representative query");
  simp->add_flag("--strict-budget", s_strict,
                 "Fail with exit code 3 when a query exhausts its budget instead of counting it infeasible");
  add_common(simp, c_simp);

  std::vector<std::string> repr_paths;
  int r_ell = 2;
  double r_eps = 0.5;
  std::string r_thresholds, r_mode = "full";
  std::uint64_t r_seed = 1, r_budget = 1'000'000;
  bool r_grid = false;
  auto* repr = app.add_subcommand("repr", "One curve of at most ell vertices close to every input");
  repr->add_option("CURVES", repr_paths)->required();
  repr->add_option("--ell", r_ell)->required()->check(CLI::PositiveNumber);
  repr->add_option("--eps", r_eps);
  repr->add_option("--thresholds", r_thresholds, "d1,d2,... or one value for all")->required();
  repr->add_option("--mode", r_mode)->check(CLI::IsMember({"full", "subset5l"}));
  repr->add_option("--seed", r_seed);
  repr->add_option("--budget", r_budget, "Search steps");
  repr->add_flag("--svg-grid", r_grid, "Draw the anchor cells of the result");
  add_common(repr, c_repr);

  std::vector<std::string> clus_paths;
  int k_k = 2, k_ell = 2;
  double k_mu = 0.2, k_eps = 0.5, k_beta = 0;
  std::uint64_t k_seed = 1, k_budget = 50'000'000, k_qbudget = 2000, k_max_x = 4, k_max_w = 12;
  auto* clus = app.add_subcommand("cluster", "(k,ell)-median clustering");
  clus->add_option("CURVES", clus_paths)->required();
  clus->add_option("--k", k_k)->required()->check(CLI::PositiveNumber);
  clus->add_option("--ell", k_ell)->required()->check(CLI::PositiveNumber);
  clus->add_option("--mu", k_mu);
  clus->add_option("--eps", k_eps);
  clus->add_option("--seed", k_seed);
  clus->add_option("--budget", k_budget, "Subset evaluations for the final selection");
  clus->add_option("--q-budget", k_qbudget, "Search steps per two-phase call");
  clus->add_option("--beta", k_beta, "Override the sampling parameter beta");
  clus->add_option("--max-x", k_max_x, "Sampled X subsets when enumeration is too large");
  clus->add_option("--max-w", k_max_w, "Sampled W subsets per X, l and h");
  add_common(clus, c_clus);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*dist) {
      auto p = prepare({dist_a, dist_b}, c_dist);
      if (p.work.size() != 2) throw InvalidArgument("dist expects exactly two curves");
      auto r = frechet_distance(p.work[0], p.work[1], dist_tol * p.norm.scale);
      json doc;
      doc["value"] = r.value / p.norm.scale;
      doc["lower"] = r.lower / p.norm.scale;
      doc["upper"] = r.upper / p.norm.scale;
      doc["normalization"] = norm_json(p.norm);
      if (!c_dist.svg.empty()) emit_svg({p.raw, {}, {}}, c_dist.svg);
      emit(doc, c_dist, out);
      return kExitOk;
    }
    if (*simp) {
      auto p = prepare({simp_path}, c_simp);
      if (p.work.size() != 1) throw InvalidArgument("simplify expects one curve");
      SimplifyOptions so;
      so.budget = s_budget;
      so.threads = resolve_threads(c_simp.threads);
      so.on_budget = s_strict ? BudgetPolicy::Propagate : BudgetPolicy::TreatAsNull;
      SimplifyResult r;
      try {
        r = bicriteria_simplify(p.work[0], s_delta * p.norm.scale, s_alpha, s_eps, so);
      } catch (const BudgetExceeded& e) {
        emit(json{{"status", "budget_exceeded"}, {"message", e.what()}}, c_simp, out);
        return kExitBudget;
      }
      Curve sigma = p.norm.invert(r.curve);
      json doc;
      doc["status"] = "ok";
      doc["vertices"] = points(sigma);
      doc["vertex_count"] = sigma.size();
      doc["frechet_check"] = {{"bound", (1 + s_eps) * s_delta}, {"pass", r.check}};
      json blocks = json::array();
      for (const auto& b : r.blocks)
        blocks.push_back({{"first", b.first}, {"last", b.last}, {"vertices", b.curve.size()}});
      doc["blocks"] = blocks;
      doc["ell_per_block"] = r.ell;
      doc["q_calls"] = r.q_calls;
      doc["budget_limited"] = r.budget_limited;
      doc["normalization"] = norm_json(p.norm);
      if (!c_simp.svg.empty()) emit_svg({p.raw, {sigma}, {}}, c_simp.svg);
      emit(doc, c_simp, out);
      return kExitOk;
    }
    if (*repr) {
      auto p = prepare(repr_paths, c_repr);
      auto th = parse_list(r_thresholds);
      if (th.size() == 1) th.assign(p.work.size(), th.front());
      if (th.size() != p.work.size()) throw InvalidArgument("one threshold per curve required");
      for (auto& t : th) t *= p.norm.scale;
      auto inst = QInstance::make(p.work, th, r_ell, r_eps);
      SolveOptions so;
      so.mode = r_mode == "full" ? SolveMode::Full : SolveMode::Subset5l;
      so.budget = r_budget;
      so.threads = resolve_threads(c_repr.threads);
      auto r = solve_Q(inst, so);
      json doc;
      doc["status"] = r.status == QStatus::Found ? "curve" : r.status == QStatus::Null ? "null" : "budget_exceeded";
      doc["seed"] = r_seed;
      SvgScene scene{p.raw, {}, {}};
      if (r.status == QStatus::Found) {
        Curve sigma = p.norm.invert(r.curve);
        doc["curve"] = points(sigma);
        json ds = json::array();
        for (double d : r.distances) ds.push_back(d / p.norm.scale);
        doc["per_curve_distances"] = ds;
        scene.outputs.push_back(sigma);
        if (r_grid)
          for (const auto& a : r.cfg.A)
            if (a) scene.cells.push_back({p.norm.invert(a->lo()), p.norm.invert(a->hi())});
      } else {
        doc["curve"] = nullptr;
        doc["per_curve_distances"] = nullptr;
      }
      doc["stats"] = {{"seeds", r.stats.seeds},
                      {"search_steps", r.stats.search_steps},
                      {"subsets", r.stats.subsets},
                      {"found_by_seed", r.stats.found_by_seed}};
      doc["normalization"] = norm_json(p.norm);
      if (!c_repr.svg.empty()) emit_svg(scene, c_repr.svg);
      emit(doc, c_repr, out);
      return r.status == QStatus::Found ? kExitOk : r.status == QStatus::Null ? kExitNull : kExitBudget;
    }
    if (*clus) {
      auto p = prepare(clus_paths, c_clus);
      KlMedianOptions ko;
      ko.beta = k_beta;
      ko.budget = k_budget;
      ko.finder.q_budget = k_qbudget;
      ko.finder.max_x = k_max_x;
      ko.finder.max_w = k_max_w;
      KlMedianResult r;
      try {
        r = kl_median(p.work, k_k, k_ell, k_mu, k_eps, k_seed, ko);
      } catch (const BudgetExceeded& e) {
        emit(json{{"status", "budget_exceeded"}, {"message", e.what()}, {"estimate", e.estimate}}, c_clus, out);
        return kExitBudget;
      }
      json doc;
      doc["status"] = "ok";
      json centers = json::array();
      SvgScene scene{p.raw, {}, {}};
      for (const auto& c : r.centers) {
        Curve back = p.norm.invert(c);
        centers.push_back(points(back));
        scene.outputs.push_back(back);
      }
      doc["centers"] = centers;
      doc["cost"] = r.cost / p.norm.scale;
      doc["assignment"] = r.assignment;
      doc["provenance_flags"] = r.flags;
      doc["candidates"] = r.candidates;
      doc["beta"] = r.beta;
      doc["normalization"] = norm_json(p.norm);
      if (!c_clus.svg.empty()) emit_svg(scene, c_clus.svg);
      emit(doc, c_clus, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace fk
