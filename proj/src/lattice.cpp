#include "crysrig/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace crysrig {

namespace {

std::string cell_str(const CellIndex& k) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ')';
  return os.str();
}

bool lex_negative(const CellIndex& k) {
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (k[i] != 0) return k[i] < 0;
  }
  return false;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<Violation> validate_framework(const CrystalFramework& fw) {
  std::vector<Violation> out;
  auto add = [&](std::string subject, std::string inv, std::string detail) {
    out.push_back({std::move(subject), std::move(inv), std::move(detail)});
  };

  const int d = static_cast<int>(fw.lattice.Z.rows());
  const double tol = fw.tolerance;
  if (!(tol > 0.0)) add("framework", "positive tolerance", "tolerance must be > 0");
  if (d < 2) {
    add("lattice", "dimension", "dimension must be at least 2");
    return out;
  }
  if (fw.lattice.Z.cols() != d) {
    add("lattice", "square period matrix", "expected d period vectors of length d");
    return out;
  }
  const bool invertible = std::abs(fw.lattice.Z.determinant()) > tol;
  if (!invertible) add("lattice", "full rank", "period vectors are linearly dependent");

  const int nv = fw.num_vertices();
  for (int i = 0; i < nv; ++i) {
    if (fw.vertices[i].position.size() != d) {
      add("vertex " + std::to_string(i), "dimension", "position has wrong length");
    }
  }
  if (invertible) {
    const Eigen::PartialPivLU<Mat> lu(fw.lattice.Z);
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) {
        if (fw.vertices[i].position.size() != d || fw.vertices[j].position.size() != d) continue;
        const Vec diff = fw.vertices[i].position - fw.vertices[j].position;
        const Vec frac = lu.solve(diff);
        const Vec k = frac.array().round().matrix();
        if ((diff - fw.lattice.Z * k).norm() <= tol) {
          add("vertex " + std::to_string(j), "vertices coincide mod lattice",
              "vertex " + std::to_string(j) + " is a lattice translate of vertex " +
                  std::to_string(i));
        }
      }
    }
  }

  std::map<EdgeClassKey, int> seen;
  for (int e = 0; e < fw.num_edges(); ++e) {
    const MotifEdge& edge = fw.edges[e];
    const std::string subject = "edge " + std::to_string(e);
    bool ok = true;
    for (const VertexRef* end : {&edge.from, &edge.to}) {
      if (end->vertex < 0 || end->vertex >= nv) {
        add(subject, "endpoint index", "vertex index " + std::to_string(end->vertex) +
                                           " out of range");
        ok = false;
      }
      if (end->cell.size() != d) {
        add(subject, "dimension", "cell index has wrong length");
        ok = false;
      }
    }
    if (!ok) continue;
    if (edge.from.vertex == edge.to.vertex && edge.exponent().isZero()) {
      add(subject, "self-loop", "both endpoints are the same framework vertex");
      continue;
    }
    if (fw.vertices[edge.from.vertex].position.size() == d &&
        fw.vertices[edge.to.vertex].position.size() == d) {
      const double len = edge_geometry(fw, edge).length;
      if (len <= tol) add(subject, "zero-length bar", "endpoints coincide");
    }
    auto [it, inserted] = seen.emplace(edge_class_key(edge), e);
    if (!inserted) {
      add(subject, "duplicate edge class",
          "translate of edge " + std::to_string(it->second));
    }
  }

  for (std::size_t s = 0; s < fw.symmetries.size(); ++s) {
    const SymmetryDecl& g = fw.symmetries[s];
    const std::string subject = "symmetry " + (g.name.empty() ? std::to_string(s) : g.name);
    if (g.linear.rows() != d || g.linear.cols() != d) {
      add(subject, "dimension", "linear part must be d x d");
    }
    if (g.translation.size() != d) add(subject, "dimension", "translation must have length d");
  }
  return out;
}

void require_valid(const CrystalFramework& fw) {
  const auto violations = validate_framework(fw);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid framework:";
  for (const auto& v : violations) os << "\n  " << v.subject << ": " << v.invariant << " (" << v.detail << ")";
  throw InvalidInput(os.str());
}

Vec point_of(const CrystalFramework& fw, int vertex, const CellIndex& cell) {
  if (vertex < 0 || vertex >= fw.num_vertices()) {
    throw InvalidInput("invalid vertex index " + std::to_string(vertex));
  }
  if (cell.size() != fw.dim()) throw InvalidInput("cell index has wrong dimension");
  return fw.vertices[vertex].position + fw.lattice.Z * cell.cast<double>();
}

EdgeGeometry edge_geometry(const CrystalFramework& fw, const MotifEdge& e) {
  EdgeGeometry g;
  g.vector = point_of(fw, e.from) - point_of(fw, e.to);
  g.exponent = e.exponent();
  g.length = g.vector.norm();
  return g;
}

EdgeClassKey edge_class_key(const MotifEdge& e) {
  int a = e.from.vertex;
  int b = e.to.vertex;
  CellIndex delta = e.exponent();
  if (a > b || (a == b && lex_negative(delta))) {
    std::swap(a, b);
    delta = -delta;
  }
  return {a, b, std::vector<int>(delta.data(), delta.data() + delta.size())};
}

bool CellBox::contains(const CellIndex& k) const {
  return k.size() == lo.size() && (k.array() >= lo.array()).all() &&
         (k.array() <= hi.array()).all();
}

std::vector<CellIndex> CellBox::cells() const {
  std::vector<CellIndex> out;
  if (lo.size() == 0 || (hi.array() < lo.array()).any()) return out;
  CellIndex k = lo;
  const Eigen::Index d = lo.size();
  while (true) {
    out.push_back(k);
    Eigen::Index i = d - 1;
    while (i >= 0 && k[i] == hi[i]) {
      k[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++k[i];
  }
  return out;
}

CrystalFramework supercell(const CrystalFramework& fw, const CellIndex& n) {
  const int d = fw.dim();
  if (n.size() != d) throw InvalidInput("supercell multiplicity vector must have length d");
  if ((n.array() < 1).any()) throw InvalidInput("supercell multiplicities must be positive");
  require_valid(fw);

  const auto residues = CellBox::counts(n).cells();
  const int nv = fw.num_vertices();
  auto residue_index = [&](const CellIndex& r) {
    int idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * n[i] + r[i];
    return idx;
  };
  // Splits an absolute cell into (residue mod n, supercell index).
  auto split = [&](const VertexRef& ref) {
    CellIndex r(d), q(d);
    for (int i = 0; i < d; ++i) {
      q[i] = floor_div(ref.cell[i], n[i]);
      r[i] = ref.cell[i] - q[i] * n[i];
    }
    return VertexRef{residue_index(r) * nv + ref.vertex, q};
  };

  CrystalFramework out;
  out.tolerance = fw.tolerance;
  out.lattice.Z = fw.lattice.Z * n.cast<double>().asDiagonal();
  for (const CellIndex& r : residues) {
    for (int v = 0; v < nv; ++v) {
      MotifVertex mv = fw.vertices[v];
      mv.position = point_of(fw, v, r);
      if (!mv.name.empty()) mv.name += "@" + cell_str(r);
      out.vertices.push_back(std::move(mv));
    }
  }
  for (const CellIndex& r : residues) {
    for (const MotifEdge& e : fw.edges) {
      out.edges.push_back({split({e.from.vertex, e.from.cell + r}),
                           split({e.to.vertex, e.to.cell + r})});
    }
  }

  const Mat Zinv = fw.lattice.Z.inverse();
  const Mat Ninv = n.cast<double>().cwiseInverse().asDiagonal();
  for (const SymmetryDecl& g : fw.symmetries) {
    if (g.linear.rows() != d) continue;
    const Mat M = Ninv * Zinv * g.linear * fw.lattice.Z * n.cast<double>().asDiagonal();
    if ((M - M.array().round().matrix()).cwiseAbs().maxCoeff() <= fw.tolerance) {
      out.symmetries.push_back(g);
    }
  }
  return out;
}

Fragment fragment(const CrystalFramework& fw, const CellBox& box) {
  const int d = fw.dim();
  if (box.lo.size() != d || box.hi.size() != d) throw InvalidInput("cell box has wrong dimension");
  if ((box.hi.array() < box.lo.array()).any()) throw InvalidInput("cell box is empty");

  Fragment out;
  const auto cells = box.cells();
  const int nv = fw.num_vertices();
  auto point_index = [&](const VertexRef& ref) -> int {
    if (!box.contains(ref.cell)) return -1;
    int idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * (box.hi[i] - box.lo[i] + 1) + (ref.cell[i] - box.lo[i]);
    return idx * nv + ref.vertex;
  };

  for (const CellIndex& k : cells) {
    for (int v = 0; v < nv; ++v) out.points.push_back({{v, k}, point_of(fw, v, k)});
  }
  for (const CellIndex& k : cells) {
    for (int e = 0; e < fw.num_edges(); ++e) {
      const MotifEdge& edge = fw.edges[e];
      // Translate so that the `from` endpoint lands in cell k.
      const CellIndex shift = k - edge.from.cell;
      PlacedEdge pe;
      pe.edge_class = e;
      pe.from = {edge.from.vertex, edge.from.cell + shift};
      pe.to = {edge.to.vertex, edge.to.cell + shift};
      pe.from_position = point_of(fw, pe.from);
      pe.to_position = point_of(fw, pe.to);
      pe.from_point = point_index(pe.from);
      pe.to_point = point_index(pe.to);
      (pe.to_point >= 0 ? out.edges : out.dangling).push_back(std::move(pe));
    }
  }
  return out;
}

}  // namespace crysrig
