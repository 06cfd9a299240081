#pragma once

#include <string>
#include <vector>

#include "frechet_kit/frechet.hpp"

namespace fk {

// Affine map p -> (p - offset) * scale applied jointly to a set of curves.
struct Normalization {
  double scale = 1.0;
  Point offset;

  Point apply(const Point& p) const { return (p - offset) * scale; }
  Point invert(const Point& p) const { return p * (1.0 / scale) + offset; }
  Curve apply(const Curve& c) const;
  Curve invert(const Curve& c) const;
};

std::vector<Curve> parse_curves_json(const std::string& text);
Curve parse_curve_csv(const std::string& text);
std::string curves_to_json(const std::vector<Curve>& curves);
std::string curve_to_csv(const Curve& c);

// format: "json", "csv" or "auto" (by extension). Duplicate consecutive vertices are collapsed.
std::vector<Curve> load_curves(const std::string& path, const std::string& format = "auto");

// Scale to unit bounding-box diameter, offset at the box minimum.
Normalization fit_normalization(const std::vector<Curve>& curves);

}  // namespace fk
