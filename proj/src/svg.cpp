#include "frechet_kit/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>

#include "frechet_kit/errors.hpp"

namespace fk {

namespace {

double coord(const Point& p, int k) { return k < p.dim() ? p[k] : 0.0; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::string render_svg(const SvgScene& scene, int width) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  auto grow = [&](const Point& p) {
    x0 = std::min(x0, coord(p, 0));
    x1 = std::max(x1, coord(p, 0));
    y0 = std::min(y0, coord(p, 1));
    y1 = std::max(y1, coord(p, 1));
  };
  for (const auto* group : {&scene.inputs, &scene.outputs})
    for (const auto& c : *group)
      for (const auto& p : c.vertices()) grow(p);
  for (const auto& b : scene.cells) {
    grow(b.lo);
    grow(b.hi);
  }
  if (x0 > x1) x0 = y0 = 0, x1 = y1 = 1;
  double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double pad = 0.05 * span;
  x0 -= pad;
  y0 -= pad;
  span += 2 * pad;
  const double s = width / span;
  const int height = std::max(1, static_cast<int>(std::ceil((y1 + pad - y0) * s)));
  // SVG y grows downward.
  auto X = [&](double x) { return fmt((x - x0) * s); };
  auto Y = [&](double y) { return fmt(height - (y - y0) * s); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& b : scene.cells) {
    out += "<rect x=\"" + X(coord(b.lo, 0)) + "\" y=\"" + Y(coord(b.hi, 1)) + "\" width=\"" +
           fmt((coord(b.hi, 0) - coord(b.lo, 0)) * s) + "\" height=\"" +
           fmt((coord(b.hi, 1) - coord(b.lo, 1)) * s) +
           "\" fill=\"#add8e6\" fill-opacity=\"0.5\" stroke=\"#7fb2c8\" stroke-width=\"0.5\"/>\n";
  }
  auto polyline = [&](const Curve& c, const char* colour, double w) {
    std::string pts;
    for (const auto& p : c.vertices()) {
      if (!pts.empty()) pts += ' ';
      pts += X(coord(p, 0)) + "," + Y(coord(p, 1));
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + colour +
           "\" stroke-width=\"" + fmt(w) + "\"/>\n";
    for (const auto& p : c.vertices())
      out += "<circle cx=\"" + X(coord(p, 0)) + "\" cy=\"" + Y(coord(p, 1)) + "\" r=\"" + fmt(w) +
             "\" fill=\"" + colour + "\"/>\n";
  };
  for (const auto& c : scene.inputs) polyline(c, "#999999", 1.0);
  for (const auto& c : scene.outputs) polyline(c, "#d62728", 2.0);
  out += "</svg>\n";
  return out;
}

void emit_svg(const SvgScene& scene, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IOError("cannot write " + path);
  f << render_svg(scene);
  if (!f) throw IOError("write failed for " + path);
}

}  // namespace fk
