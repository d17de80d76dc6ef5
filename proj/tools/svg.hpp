#pragma once

#include <string>
#include <vector>

#include "extcvx/geometry.hpp"
#include "extcvx/scalar_fn.hpp"

namespace extcvx::svg {

struct Curve {
  std::string label;
  UpFunction f;
};

/// Plots the curves over [lo, hi]. Finite parts are drawn as polylines, the
/// set where a curve is -inf as a dashed band on the lower edge; +inf is left
/// blank.
std::string plot_functions(const std::vector<Curve>& curves, double lo, double hi);

struct Region {
  std::string label;
  ConvexPoly2 poly;
};

/// Draws the regions clipped to a box that contains every listed vertex.
std::string plot_regions(const std::vector<Region>& regions);

/// A plotting window around the breakpoints and domain ends of `fs`.
std::pair<double, double> plot_window(const std::vector<UpFunction>& fs);

void write_file(const std::string& path, const std::string& content);

}  // namespace extcvx::svg
