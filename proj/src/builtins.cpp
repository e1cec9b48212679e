#include "crysrig/lattice.hpp"

#include <cmath>
#include <numbers>

namespace crysrig {

namespace {

CellIndex cell(std::initializer_list<int> k) {
  CellIndex c(static_cast<Eigen::Index>(k.size()));
  Eigen::Index i = 0;
  for (int v : k) c[i++] = v;
  return c;
}

Vec vec(std::initializer_list<double> x) {
  Vec v(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double a : x) v[i++] = a;
  return v;
}

Mat rotation2(double angle) {
  Mat B(2, 2);
  B << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return B;
}

// Isometry x -> B (x - centre) + centre.
SymmetryDecl about(std::string name, const Mat& B, const Vec& centre) {
  return {std::move(name), B, centre - B * centre};
}

CrystalFramework square_grid() {
  CrystalFramework fw;
  fw.lattice.Z = Mat::Identity(2, 2);
  fw.vertices = {{vec({0.0, 0.0}), "p1"}};
  fw.edges = {
      {{0, cell({0, 0})}, {0, cell({1, 0})}},
      {{0, cell({0, 0})}, {0, cell({0, 1})}},
  };
  fw.symmetries = {about("rot4", rotation2(std::numbers::pi / 2), vec({0.0, 0.0}))};
  return fw;
}

// Equilateral triangles of side 1/2; the motif is one upward triangle.
CrystalFramework kagome() {
  const double s3 = std::sqrt(3.0);
  CrystalFramework fw;
  fw.lattice.Z.resize(2, 2);
  fw.lattice.Z << 1.0, 0.5, 0.0, s3 / 2;
  fw.vertices = {
      {vec({0.0, 0.0}), "p1"},
      {vec({0.5, 0.0}), "p2"},
      {vec({0.25, s3 / 4}), "p3"},
  };
  const CellIndex o = cell({0, 0});
  fw.edges = {
      {{0, o}, {1, o}},
      {{1, o}, {2, o}},
      {{0, o}, {2, o}},
      {{0, o}, {1, cell({-1, 0})}},
      {{1, o}, {2, cell({1, -1})}},
      {{2, o}, {0, cell({0, 1})}},
  };
  const Vec centre = vec({0.25, s3 / 12});
  Mat reflect_x = Mat::Identity(2, 2);
  reflect_x(1, 1) = -1.0;
  fw.symmetries = {
      about("rot3", rotation2(2 * std::numbers::pi / 3), centre),
      {"glide", reflect_x, vec({0.5, 0.0})},
  };
  return fw;
}

// Triangular bipyramids of unit edge stacked vertically; p1 equatorial,
// p2 the south pole of the bipyramid over the upward triangle at p1.
CrystalFramework hexahedron() {
  const double s3 = std::sqrt(3.0);
  const double h = std::sqrt(2.0) / s3;
  CrystalFramework fw;
  fw.lattice.Z.resize(3, 3);
  fw.lattice.Z << 1.0, 0.5, 0.0,
                  0.0, s3 / 2, 0.0,
                  0.0, 0.0, 2 * h;
  fw.vertices = {
      {vec({0.0, 0.0, 0.0}), "p1"},
      {vec({0.5, s3 / 6, -h}), "p2"},
  };
  const CellIndex o = cell({0, 0, 0});
  const CellIndex x = cell({1, 0, 0});
  const CellIndex y = cell({0, 1, 0});
  const CellIndex up = cell({0, 0, 1});
  fw.edges = {
      {{0, o}, {0, x}},
      {{0, o}, {0, y}},
      {{0, x}, {0, y}},
      {{1, o}, {0, o}},
      {{1, o}, {0, x}},
      {{1, o}, {0, y}},
      {{1, up}, {0, o}},
      {{1, up}, {0, x}},
      {{1, up}, {0, y}},
  };
  Mat rot = Mat::Identity(3, 3);
  rot.topLeftCorner(2, 2) = rotation2(2 * std::numbers::pi / 3);
  Mat mirror = Mat::Identity(3, 3);
  mirror(2, 2) = -1.0;
  fw.symmetries = {
      about("rot3", rot, vec({0.5, s3 / 6, 0.0})),
      {"mirror_z", mirror, vec({0.0, 0.0, 0.0})},
  };
  return fw;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"square_grid", "kagome", "hexahedron"}; }

CrystalFramework builtin_framework(const std::string& name) {
  if (name == "square_grid") return square_grid();
  if (name == "kagome") return kagome();
  if (name == "hexahedron") return hexahedron();
  throw InvalidInput("unknown built-in framework '" + name + "'");
}

}  // namespace crysrig
