#pragma once

/**
 * @file svg.hpp
 * @brief Deterministic SVG drawings of the pillowcase fundamental domain
 * [0, pi] x [0, 2pi] with curves and marked points.
 */

#include <string>
#include <vector>

#include "pillow/pillowcase.hpp"

namespace pillow {

struct SvgMark {
  PillowPoint point;
  std::string label;
};

// Curves are drawn sorted by label; curves whose label contains "abelian"
// are red, the rest take colors from a fixed palette.  Marks are drawn
// sorted by (alpha, beta).
std::string emit_svg(const std::vector<PillowCurve>& curves, const std::vector<SvgMark>& marks,
                     const std::string& title = {});

}  // namespace pillow
