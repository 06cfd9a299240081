#include "frechet_kit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frechet_kit/errors.hpp"

namespace fk {

using nlohmann::json;

Curve Normalization::apply(const Curve& c) const {
  std::vector<Point> v;
  for (const auto& p : c.vertices()) v.push_back(apply(p));
  return Curve(std::move(v));
}

Curve Normalization::invert(const Curve& c) const {
  std::vector<Point> v;
  for (const auto& p : c.vertices()) v.push_back(invert(p));
  return Curve(std::move(v));
}

std::vector<Curve> parse_curves_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("offset " + std::to_string(e.byte) + ": invalid JSON");
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("curves"))
    throw ParseError("offset 0: expected an object with \"d\" and \"curves\"");
  if (!doc["d"].is_number_integer()) throw ParseError("\"d\" must be an integer");
  const int d = doc["d"].get<int>();
  if (d < 1 || d > kMaxDim) throw ParseError("\"d\" out of range");
  if (!doc["curves"].is_array()) throw ParseError("\"curves\" must be an array");
  std::vector<Curve> out;
  int ci = 0;
  for (const auto& jc : doc["curves"]) {
    if (!jc.is_array() || jc.empty())
      throw ParseError("curve " + std::to_string(ci) + ": expected a non-empty array of points");
    std::vector<Point> v;
    int vi = 0;
    for (const auto& jp : jc) {
      const std::string where = "curve " + std::to_string(ci) + ", vertex " + std::to_string(vi);
      if (!jp.is_array()) throw ParseError(where + ": expected an array");
      if (static_cast<int>(jp.size()) != d)
        throw DimensionMismatch(where + ": expected " + std::to_string(d) + " coordinates");
      Point p(d);
      for (int k = 0; k < d; ++k) {
        if (!jp[k].is_number()) throw ParseError(where + ": non-numeric coordinate");
        p[k] = jp[k].get<double>();
      }
      v.push_back(p);
      ++vi;
    }
    out.push_back(collapse_duplicates(Curve(std::move(v))));
    ++ci;
  }
  if (out.empty()) throw EmptyInput("no curves in input");
  return out;
}

Curve parse_curve_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Point> v;
  int d = -1;
  for (int ln = 1; std::getline(in, line); ++ln) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    bool header = false;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::string cell = line.substr(pos, end - pos);
      const char* s = cell.c_str();
      char* stop = nullptr;
      double x = std::strtod(s, &stop);
      while (*stop == ' ' || *stop == '\t') ++stop;
      if (stop == s || *stop != '\0' || !std::isfinite(x)) {
        if (v.empty() && d < 0) {
          header = true;
          break;
        }
        throw ParseError("line " + std::to_string(ln) + ", column " + std::to_string(pos + 1) +
                         ": not a number");
      }
      row.push_back(x);
      pos = end + 1;
    }
    if (header) {
      d = 0;  // header seen; data rows fix the dimension
      continue;
    }
    if (d <= 0) d = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != d)
      throw DimensionMismatch("line " + std::to_string(ln) + ": expected " + std::to_string(d) +
                              " values");
    if (d > kMaxDim) throw ParseError("line " + std::to_string(ln) + ": too many coordinates");
    v.push_back(Point::from_range(row.begin(), row.end()));
  }
  if (v.empty()) throw EmptyInput("no vertices in CSV input");
  return collapse_duplicates(Curve(std::move(v)));
}

std::string curves_to_json(const std::vector<Curve>& curves) {
  json doc;
  doc["d"] = curves.empty() ? 0 : curves.front().dim();
  doc["curves"] = json::array();
  for (const auto& c : curves) {
    json jc = json::array();
    for (const auto& p : c.vertices()) {
      json jp = json::array();
      for (int k = 0; k < p.dim(); ++k) jp.push_back(p[k]);
      jc.push_back(jp);
    }
    doc["curves"].push_back(jc);
  }
  return doc.dump();
}

std::string curve_to_csv(const Curve& c) {
  std::string out;
  char buf[64];
  for (const auto& p : c.vertices()) {
    for (int k = 0; k < p.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      if (k) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<Curve> load_curves(const std::string& path, const std::string& format) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IOError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string fmt = format;
  if (fmt == "auto") {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    fmt = ext == "csv" ? "csv" : "json";
  }
  try {
    if (fmt == "json") return parse_curves_json(ss.str());
    if (fmt == "csv") return {parse_curve_csv(ss.str())};
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw InvalidArgument("unknown format " + format);
}

Normalization fit_normalization(const std::vector<Curve>& curves) {
  if (curves.empty()) throw EmptyInput("no curves to normalize");
  Point lo = curves.front()[0], hi = lo;
  for (const auto& c : curves)
    for (const auto& p : c.vertices())
      for (int k = 0; k < p.dim(); ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
  Normalization n;
  n.offset = lo;
  const double diam = dist(lo, hi);
  n.scale = diam > 0 ? 1.0 / diam : 1.0;
  return n;
}

}  // namespace fk
