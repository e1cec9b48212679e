#include "crysrig/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace crysrig {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string render_svg(const CrystalFramework& fw, const CellBox& box, const SvgOptions& options) {
  if (fw.dim() != 2) throw InvalidInput("svg rendering requires dimension 2 (dimension ≠ 2)");
  const Fragment frag = fragment(fw, box);
  const auto cells = box.cells();
  const Mat& Z = fw.lattice.Z;

  double xmin = std::numeric_limits<double>::max(), ymin = xmin;
  double xmax = std::numeric_limits<double>::lowest(), ymax = xmax;
  auto grow = [&](const Vec& p) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  };
  for (const auto& p : frag.points) grow(p.position);
  for (const auto& e : frag.dangling) grow(e.to_position);
  std::vector<std::array<Vec, 4>> outlines;
  if (options.draw_cells) {
    for (const CellIndex& k : cells) {
      const Vec o = Z * k.cast<double>();
      outlines.push_back({o, Vec(o + Z.col(0)), Vec(o + Z.col(0) + Z.col(1)), Vec(o + Z.col(1))});
      for (const Vec& c : outlines.back()) grow(c);
    }
  }
  if (xmin > xmax) xmin = xmax = ymin = ymax = 0.0;

  const double s = options.scale;
  const double m = options.margin;
  const double width = (xmax - xmin) * s + 2 * m;
  const double height = (ymax - ymin) * s + 2 * m;
  auto X = [&](const Vec& p) { return num((p[0] - xmin) * s + m); };
  auto Y = [&](const Vec& p) { return num((ymax - p[1]) * s + m); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
     << num(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (options.draw_cells) {
    os << "<g fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const auto& q : outlines) {
      os << "<polygon class=\"cell\" points=\"";
      for (int i = 0; i < 4; ++i) os << (i ? " " : "") << X(q[i]) << "," << Y(q[i]);
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<g stroke=\"#1f4e79\" stroke-width=\"" << num(options.edge_width)
     << "\" stroke-linecap=\"round\">\n";
  auto line = [&](const PlacedEdge& e, const char* cls, const char* extra) {
    os << "<line class=\"" << cls << "\" x1=\"" << X(e.from_position) << "\" y1=\""
       << Y(e.from_position) << "\" x2=\"" << X(e.to_position) << "\" y2=\""
       << Y(e.to_position) << "\"" << extra << "/>\n";
  };
  for (const auto& e : frag.edges) line(e, "edge", "");
  for (const auto& e : frag.dangling) line(e, "edge dangling", " stroke-opacity=\"0.4\"");
  os << "</g>\n";
  os << "<g fill=\"#c00000\">\n";
  for (const auto& p : frag.points) {
    os << "<circle class=\"vertex\" cx=\"" << X(p.position) << "\" cy=\"" << Y(p.position)
       << "\" r=\"" << num(options.vertex_radius) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace crysrig
