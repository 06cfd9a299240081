#pragma once

#include <string>
#include <vector>

#include "frechet_kit/frechet.hpp"

namespace fk {

struct SvgBox {
  Point lo, hi;
};

struct SvgScene {
  std::vector<Curve> inputs;   // grey
  std::vector<Curve> outputs;  // red
  std::vector<SvgBox> cells;   // light blue
};

// First two coordinates only; one-dimensional curves are drawn on a horizontal line.
std::string render_svg(const SvgScene& scene, int width = 640);
void emit_svg(const SvgScene& scene, const std::string& path);

}  // namespace fk
