#pragma once

// SVG 1.1 figures of planar solutions: covered demand in red, uncovered in
// gray, discrete facilities as green squares and continuous facilities as
// blue triangles, each with its coverage region.

#include <string>

#include "mtmclp/model.hpp"

namespace mtmclp {

struct SvgOptions {
  double size = 800.0;     // canvas edge in pixels
  double margin = 20.0;    // pixels
  bool draw_regions = true;
};

// Throws InputError unless the instance is planar.
std::string emit_svg(const Instance& instance, const Solution& solution,
                     const SvgOptions& options = {});

}  // namespace mtmclp
