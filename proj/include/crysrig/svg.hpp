#ifndef CRYSRIG_SVG_HPP_
#define CRYSRIG_SVG_HPP_

#include "crysrig/lattice.hpp"

#include <string>

namespace crysrig {

struct SvgOptions {
  double scale = 120.0;  // pixels per length unit
  double margin = 20.0;
  double vertex_radius = 4.0;
  double edge_width = 2.0;
  bool draw_cells = true;
};

/// SVG 1.1 drawing of fragment(fw, box): one <circle class="vertex"> per
/// point, one <line class="edge"> per internal edge, one
/// <line class="edge dangling"> per edge leaving the box, and a
/// <polygon class="cell"> outline per cell. Planar frameworks only.
std::string render_svg(const CrystalFramework& fw, const CellBox& box,
                       const SvgOptions& options = {});

}  // namespace crysrig

#endif  // CRYSRIG_SVG_HPP_
