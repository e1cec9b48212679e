#include "crysrig/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace crysrig {

namespace {

using Kind = SymmetryError::Kind;

double invariance_tol(double tol) { return 10.0 * tol; }

bool near_integer(const Vec& x, double tol, CellIndex& rounded) {
  const Vec r = x.array().round().matrix();
  rounded = r.cast<int>();
  return (x - r).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

std::vector<int> SymmetryElement::vertex_permutation() const {
  std::vector<int> p;
  for (const auto& v : vertex_action) p.push_back(v.vertex);
  return p;
}

std::vector<int> SymmetryElement::edge_permutation() const {
  std::vector<int> p;
  for (const auto& e : edge_action) p.push_back(e.edge);
  return p;
}

SymmetryElement resolve_symmetry(const CrystalFramework& fw, const Mat& B, const Vec& c,
                                 const std::string& name) {
  require_valid(fw);
  const int d = fw.dim();
  const double tol = fw.tolerance;
  const std::string who = "symmetry '" + name + "': ";
  if (B.rows() != d || B.cols() != d || c.size() != d) {
    throw SymmetryError(Kind::Shape, who + "linear part must be d x d and translation length d");
  }
  if ((B.transpose() * B - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
    throw SymmetryError(Kind::NotOrthogonal, who + "linear part is not orthogonal");
  }

  SymmetryElement g;
  g.name = name;
  g.B = B;
  g.c = c;

  const Mat& Z = fw.lattice.Z;
  const Eigen::PartialPivLU<Mat> lu(Z);
  const Mat M = lu.solve(B * Z);
  g.lattice_map.resize(d, d);
  for (int j = 0; j < d; ++j) {
    CellIndex col;
    if (!near_integer(M.col(j), tol, col)) {
      throw SymmetryError(Kind::LatticeIncompatible,
                          who + "lattice-incompatible: linear part does not preserve the period lattice");
    }
    g.lattice_map.col(j) = col;
  }

  const int nv = fw.num_vertices();
  std::vector<bool> hit(nv, false);
  for (int v = 0; v < nv; ++v) {
    const Vec y = B * fw.vertices[v].position + c;
    int found = -1;
    CellIndex offset;
    for (int w = 0; w < nv && found < 0; ++w) {
      const Vec diff = y - fw.vertices[w].position;
      CellIndex k = lu.solve(diff).array().round().matrix().cast<int>();
      if ((diff - Z * k.cast<double>()).norm() <= tol) {
        found = w;
        offset = k;
      }
    }
    if (found < 0) {
      throw SymmetryError(Kind::NotASymmetry,
                          who + "image of vertex " + std::to_string(v) + " is not a framework vertex");
    }
    if (hit[found]) {
      throw SymmetryError(Kind::NotASymmetry, who + "vertex action is not a bijection");
    }
    hit[found] = true;
    g.vertex_action.push_back({found, offset});
  }

  std::map<EdgeClassKey, int> classes;
  for (int e = 0; e < fw.num_edges(); ++e) classes.emplace(edge_class_key(fw.edges[e]), e);
  auto image = [&](const VertexRef& ref) {
    const VertexImage& vi = g.vertex_action[ref.vertex];
    return VertexRef{vi.vertex, g.lattice_map * ref.cell + vi.offset};
  };
  std::vector<bool> edge_hit(fw.num_edges(), false);
  for (int e = 0; e < fw.num_edges(); ++e) {
    const MotifEdge img{image(fw.edges[e].from), image(fw.edges[e].to)};
    const auto it = classes.find(edge_class_key(img));
    if (it == classes.end()) {
      throw SymmetryError(Kind::NotASymmetry,
                          who + "image of edge " + std::to_string(e) + " is not a framework edge");
    }
    const MotifEdge& target = fw.edges[it->second];
    EdgeImage ei;
    ei.edge = it->second;
    ei.reversed = !(target.from.vertex == img.from.vertex &&
                    target.exponent() == img.exponent());
    ei.offset = (ei.reversed ? img.to.cell : img.from.cell) - target.from.cell;
    if (edge_hit[ei.edge]) {
      throw SymmetryError(Kind::NotASymmetry, who + "edge action is not a bijection");
    }
    edge_hit[ei.edge] = true;
    g.edge_action.push_back(ei);
  }
  return g;
}

SymmetryElement identity_element(const CrystalFramework& fw) {
  const int d = fw.dim();
  return resolve_symmetry(fw, Mat::Identity(d, d), Vec::Zero(d), "identity");
}

std::vector<SymmetryElement> resolve_declared(const CrystalFramework& fw) {
  std::vector<SymmetryElement> out;
  for (const SymmetryDecl& s : fw.symmetries) {
    out.push_back(resolve_symmetry(fw, s.linear, s.translation, s.name));
  }
  return out;
}

SymmetryElement compose(const CrystalFramework& fw, const SymmetryElement& g,
                        const SymmetryElement& h) {
  return resolve_symmetry(fw, g.B * h.B, g.B * h.c + g.c, g.name + "*" + h.name);
}

bool is_separable(const SymmetryElement& g) {
  return std::all_of(g.vertex_action.begin(), g.vertex_action.end(),
                     [](const VertexImage& v) { return v.offset.isZero(); });
}

RepresentationMatrices representation_matrices(const CrystalFramework& fw,
                                               const SymmetryElement& g) {
  const int d = fw.dim();
  const int nv = fw.num_vertices();
  const int ne = fw.num_edges();
  if (g.B.rows() != d || static_cast<int>(g.vertex_action.size()) != nv ||
      static_cast<int>(g.edge_action.size()) != ne) {
    throw InvalidInput("symmetry element was not resolved against this framework");
  }
  RepresentationMatrices r;
  r.mu_v = Mat::Zero(d * nv, d * nv);
  r.phi1 = Mat::Zero(d * nv, d * d);
  const Mat Bt = g.B.transpose();
  for (int v = 0; v < nv; ++v) {
    const VertexImage& vi = g.vertex_action[v];
    r.mu_v.block(d * vi.vertex, d * v, d, d) = g.B;
    const Vec y = Bt * (fw.lattice.Z * vi.offset.cast<double>());
    // vec-linear form of A -> B A y.
    r.phi1.block(d * vi.vertex, 0, d, d * d) = kron(y.transpose(), g.B);
  }
  r.phi2 = kron(g.B, g.B);
  r.pi_e = Mat::Zero(ne, ne);
  for (int e = 0; e < ne; ++e) r.pi_e(g.edge_action[e].edge, e) = 1.0;

  r.pi_v = Mat::Zero(d * nv + d * d, d * nv + d * d);
  r.pi_v.topLeftCorner(d * nv, d * nv) = r.mu_v;
  r.pi_v.topRightCorner(d * nv, d * d) = r.phi1;
  r.pi_v.bottomRightCorner(d * d, d * d) = r.phi2;
  return r;
}

bool is_conjugation_invariant(const MatrixSpace& space, const Mat& B, double tol) {
  if (space.dim() == 0) return true;
  const SubspaceBasis span = range_basis(space.embedding(), tol);
  for (const Mat& a : space.basis()) {
    const Vec img = vectorize(B * a * B.transpose());
    const double res = (img - span.basis * (span.basis.transpose() * img)).norm();
    if (res > invariance_tol(tol) * std::max(1.0, img.norm())) return false;
  }
  return true;
}

namespace {

struct RestrictedDomain {
  Mat Q;    // orthonormal basis of R^{d|F_v|} + E inside (u, vec A)
  Mat PiE;  // pi_v restricted to it
};

RestrictedDomain restrict_domain(const CrystalFramework& fw, const SymmetryElement& g,
                                 const MatrixSpace& space, const Mat& pi_v) {
  if (!is_conjugation_invariant(space, g.B, fw.tolerance)) {
    throw SymmetryError(Kind::NotInvariant, "matrix space '" + space.name() +
                                                "' is not invariant under conjugation by '" +
                                                g.name + "'");
  }
  RestrictedDomain dom;
  dom.Q = range_basis(domain_embedding(fw, space), fw.tolerance).basis;
  dom.PiE = dom.Q.transpose() * pi_v * dom.Q;
  return dom;
}

double trace_on(const Mat& P, const SubspaceBasis& sub) {
  if (sub.dim() == 0) return 0.0;
  return (sub.basis.transpose() * P * sub.basis).trace();
}

}  // namespace

double verify_symmetry_equation(const CrystalFramework& fw, const SymmetryElement& g,
                                const MatrixSpace& space) {
  const RepresentationMatrices rep = representation_matrices(fw, g);
  const RestrictedDomain dom = restrict_domain(fw, g, space, rep.pi_v);
  const Mat RQ = affine_operator(fw) * dom.Q;
  if (RQ.size() == 0) return 0.0;
  return (rep.pi_e * RQ - RQ * dom.PiE).cwiseAbs().maxCoeff();
}

double verify_symmetry_equation(const CrystalFramework& fw, const SymmetryElement& g) {
  return verify_symmetry_equation(fw, g, MatrixSpace::full(fw.dim()));
}

MatrixSpace commutant_basis(const Mat& B, double tol) {
  const int d = static_cast<int>(B.rows());
  if (B.cols() != d) throw InvalidInput("commutant requires a square matrix");
  const Mat I = Mat::Identity(d, d);
  // vec(AB - BA) = (B^T kron I - I kron B) vec A
  const SubspaceBasis ker = kernel_basis(kron(B.transpose(), I) - kron(I, B), tol);
  std::vector<Mat> basis;
  for (int j = 0; j < ker.dim(); ++j) basis.push_back(unvectorize(ker.basis.col(j), d));
  return MatrixSpace::custom(d, std::move(basis), "commutant", tol);
}

SubspaceBasis fixed_space(const Mat& P, double tol) {
  if (P.rows() != P.cols()) throw InvalidInput("fixed_space requires a square matrix");
  return kernel_basis(P - Mat::Identity(P.rows(), P.cols()), tol);
}

std::vector<std::vector<int>> edge_orbits(const SymmetryElement& g) {
  const std::vector<int> perm = g.edge_permutation();
  const int n = static_cast<int>(perm.size());
  const int cap = 48 * std::max(1, n);
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> orbits;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    int e = start;
    int steps = 0;
    do {
      if (++steps > cap) throw std::logic_error("edge action of '" + g.name + "' does not close");
      seen[e] = true;
      orbit.push_back(e);
      e = perm[e];
    } while (e != start);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

SymmetryCountReport symmetry_counts(const CrystalFramework& fw, const SymmetryElement& g) {
  const double tol = fw.tolerance;
  const RepresentationMatrices rep = representation_matrices(fw, g);
  const MatrixSpace Eg = commutant_basis(g.B, tol);

  SymmetryCountReport r;
  r.name = g.name;
  r.separable = is_separable(g);
  r.dim_F_g = fixed_space(rep.mu_v, tol).dim();
  r.dim_E_g = Eg.dim();
  r.e_g = static_cast<int>(edge_orbits(g).size());

  const SubspaceBasis fixed = fixed_space(rep.pi_v, tol);
  r.dim_H_v_g = fixed.dim();

  const Mat RQ = affine_operator(fw) * fixed.basis;
  r.flex_g = kernel_basis(RQ, tol).dim();
  const int rank = numeric_rank(RQ, tol);

  const SubspaceBasis rigid_local = rigid_motion_space(fw, Eg);
  const SubspaceBasis rigid =
      range_basis(domain_embedding(fw, Eg) * rigid_local.basis, tol);
  r.f_g = intersect(rigid, fixed).dim();

  r.m_g = r.flex_g - r.f_g;
  r.s_g = r.e_g - rank;
  const int domain = r.separable ? r.dim_F_g + r.dim_E_g : r.dim_H_v_g;
  r.identity_residual = (r.m_g - r.s_g) - (domain - r.e_g - r.f_g);
  r.predictor_fires = r.e_g < domain - r.f_g;
  return r;
}

bool flexibility_predictor(const CrystalFramework& fw, const SymmetryElement& g) {
  return symmetry_counts(fw, g).predictor_fires;
}

CharacterRow character_row(const CrystalFramework& fw, const SymmetryElement& g,
                           const MatrixSpace& space) {
  const double tol = fw.tolerance;
  const RepresentationMatrices rep = representation_matrices(fw, g);
  const RestrictedDomain dom = restrict_domain(fw, g, space, rep.pi_v);
  const int n = static_cast<int>(dom.Q.cols());
  const Mat op = affine_operator(fw) * dom.Q;

  const SubspaceBasis flex = kernel_basis(op, tol);
  const SubspaceBasis stress = cokernel_basis(op, tol);
  const SubspaceBasis rigid_local = rigid_motion_space(fw, space);
  SubspaceBasis rigid = range_basis(
      dom.Q.transpose() * domain_embedding(fw, space) * rigid_local.basis, tol);
  rigid.ambient_dim = n;
  const SubspaceBasis mech = complement_within(flex, rigid);

  CharacterRow row;
  row.name = g.name;
  row.space = space.name();
  row.trace_v = dom.PiE.trace();
  row.trace_e = rep.pi_e.trace();
  row.trace_flex = trace_on(dom.PiE, flex);
  row.trace_rig = trace_on(dom.PiE, rigid);
  row.trace_mech = trace_on(dom.PiE, mech);
  row.trace_str = trace_on(rep.pi_e, stress);
  row.residual = (row.trace_mech - row.trace_str) - (row.trace_v - row.trace_e - row.trace_rig);
  return row;
}

}  // namespace crysrig
