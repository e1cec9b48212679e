// Periodic bar-joint frameworks: period lattices, motifs, supercells and
// finite fragments.
//
// A crystal framework is given by a finite motif (vertex classes F_v and
// edge classes F_e) together with d period vectors. The vertex (kappa, k)
// sits at p_kappa + Z k, where the columns of Z are the period vectors.

#ifndef CRYSRIG_LATTICE_HPP_
#define CRYSRIG_LATTICE_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace crysrig {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CellIndex = Eigen::VectorXi;

inline constexpr double kDefaultTolerance = 1e-9;

/// Raised for malformed user input: bad indices, shapes, multiplicities.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PeriodLattice {
  Mat Z;  // columns are the period vectors a_1..a_d

  int dim() const { return static_cast<int>(Z.rows()); }
  Vec period(int i) const { return Z.col(i); }
};

struct MotifVertex {
  Vec position;  // p_{kappa,0}
  std::string name;
};

/// A framework vertex (kappa, k): vertex class plus lattice cell.
struct VertexRef {
  int vertex = 0;
  CellIndex cell;
};

/// Motif edge [(kappa,k), (tau,k')] in the general two-cell form.
struct MotifEdge {
  VertexRef from;
  VertexRef to;

  CellIndex exponent() const { return to.cell - from.cell; }
  MotifEdge reversed() const { return {to, from}; }
};

/// Declared (not yet resolved) space-group element x -> B x + c.
struct SymmetryDecl {
  std::string name;
  Mat linear;
  Vec translation;
};

struct CrystalFramework {
  PeriodLattice lattice;
  std::vector<MotifVertex> vertices;
  std::vector<MotifEdge> edges;
  std::vector<SymmetryDecl> symmetries;
  double tolerance = kDefaultTolerance;

  int dim() const { return lattice.dim(); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

struct Violation {
  std::string subject;    // e.g. "vertex 2", "edge 0", "lattice"
  std::string invariant;  // short invariant name, e.g. "self-loop"
  std::string detail;
};

/// Checks every structural invariant of the framework. An empty result
/// means the framework is valid; violations are data, never thrown.
std::vector<Violation> validate_framework(const CrystalFramework& fw);

/// Throws InvalidInput listing the violations if the framework is invalid.
void require_valid(const CrystalFramework& fw);

Vec point_of(const CrystalFramework& fw, int vertex, const CellIndex& cell);
inline Vec point_of(const CrystalFramework& fw, const VertexRef& ref) {
  return point_of(fw, ref.vertex, ref.cell);
}

struct EdgeGeometry {
  Vec vector;         // v_e = p(from) - p(to)
  CellIndex exponent; // delta(e) = k' - k
  double length = 0.0;
};

EdgeGeometry edge_geometry(const CrystalFramework& fw, const MotifEdge& e);

/// Key identifying an edge class up to translation and orientation:
/// (kappa, tau, delta) with kappa <= tau, and delta lexicographically
/// non-negative when kappa == tau.
struct EdgeClassKey {
  int a = 0;
  int b = 0;
  std::vector<int> delta;

  friend bool operator==(const EdgeClassKey&, const EdgeClassKey&) = default;
  friend auto operator<=>(const EdgeClassKey&, const EdgeClassKey&) = default;
};

EdgeClassKey edge_class_key(const MotifEdge& e);

/// Builds the n_1 x ... x n_d supercell. Vertex (kappa, r) of the new motif
/// has index r_linear * |F_v| + kappa where r runs lexicographically over
/// the residues with the last coordinate fastest. Declared symmetries are
/// kept only when their linear part preserves the supercell lattice.
CrystalFramework supercell(const CrystalFramework& fw, const CellIndex& n);

/// Inclusive box of lattice cells.
struct CellBox {
  CellIndex lo;
  CellIndex hi;

  static CellBox single(int d) {
    return {CellIndex::Zero(d), CellIndex::Zero(d)};
  }
  /// Cells [0, n_i) along each axis.
  static CellBox counts(const CellIndex& n) {
    return {CellIndex::Zero(n.size()), n - CellIndex::Ones(n.size())};
  }
  bool contains(const CellIndex& k) const;
  std::vector<CellIndex> cells() const;
};

struct PlacedPoint {
  VertexRef ref;
  Vec position;
};

struct PlacedEdge {
  int edge_class = 0;
  VertexRef from;
  VertexRef to;
  Vec from_position;
  Vec to_position;
  int from_point = -1;  // index into Fragment::points
  int to_point = -1;    // -1 when the endpoint lies outside the box
};

/// Finite piece of the infinite framework. Every edge instance whose
/// `from` endpoint lies in the box is listed exactly once: in `edges` when
/// the other endpoint is also in the box, otherwise in `dangling`.
struct Fragment {
  std::vector<PlacedPoint> points;
  std::vector<PlacedEdge> edges;
  std::vector<PlacedEdge> dangling;
};

Fragment fragment(const CrystalFramework& fw, const CellBox& box);

std::vector<std::string> builtin_names();

/// "square_grid", "kagome" or "hexahedron". Throws InvalidInput otherwise.
CrystalFramework builtin_framework(const std::string& name);

}  // namespace crysrig

#endif  // CRYSRIG_LATTICE_HPP_
