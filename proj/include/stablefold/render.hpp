#pragma once

#include <stdexcept>
#include <string>

#include "stablefold/assembly.hpp"
#include "stablefold/rational.hpp"

namespace stablefold {

class RenderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StrokeStyle {
  std::string color;
  double width = 1.0;
  std::string dash;   // SVG stroke-dasharray, empty for solid
};

struct RenderOptions {
  bool show_labels = true;
  bool show_definite_crossings = true;
  // Annulus radii in SVG user units; level 0 sits on the outer circle.
  Rational inner_radius{60};
  Rational outer_radius{220};
  StrokeStyle definite{"#1d4f91", 2.0, ""};
  StrokeStyle indefinite{"#b8312f", 2.0, "7 4"};

  // Throws RenderError unless 0 < inner < outer and widths are positive.
  void validate() const;
};

// Sectors become equal wedges of the annulus (clockwise from 12 o'clock),
// levels map affinely to radius. One <path class="arc ..."> per model arc.
std::string render_svg(const StableMapModel& model, const RenderOptions& options = {});
std::string render_svg(const SurgeredMapModel& model, const RenderOptions& options = {});

}  // namespace stablefold
