#pragma once

// SVG diagrams of angle sets on the unit circle: each set of two or more
// angles is drawn as segments from its points to their centroid.

#include <string>
#include <vector>

#include "critport/angle.h"

namespace critport {

struct DiagramOptions {
  int size = 512;
  double stroke_width = 1.5;
  double dot_radius = 3.0;
  bool labels = false;
};

/// Deterministic for fixed input: coordinates are printed with three
/// decimals and sets are drawn in the order given.
std::string render_svg(const std::vector<AngleSet> &sets, const DiagramOptions &opts = {});

}  // namespace critport
