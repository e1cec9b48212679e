#include "crysrig/rigidity.hpp"

#include <cmath>
#include <stdexcept>

namespace crysrig {

namespace {

Mat unit_matrix(int d, int i, int j) {
  Mat a = Mat::Zero(d, d);
  a(i, j) = 1.0;
  return a;
}

// Threshold for "vector lies in subspace" style checks.
double containment_tol(double tol) { return 10.0 * tol; }

}  // namespace

Mat RigidityMatrices::affine() const {
  Mat out(R.rows(), R.cols() + X.cols());
  out << R, X;
  return out;
}

RigidityMatrices build_matrices(const CrystalFramework& fw) {
  require_valid(fw);
  const int d = fw.dim();
  const int nv = fw.num_vertices();
  const int ne = fw.num_edges();
  RigidityMatrices m;
  m.R = Mat::Zero(ne, d * nv);
  m.X = Mat::Zero(ne, d * d);
  for (int e = 0; e < ne; ++e) {
    const MotifEdge& edge = fw.edges[e];
    const EdgeGeometry g = edge_geometry(fw, edge);
    if (edge.from.vertex != edge.to.vertex) {
      m.R.block(e, d * edge.from.vertex, 1, d) = g.vector.transpose();
      m.R.block(e, d * edge.to.vertex, 1, d) = -g.vector.transpose();
    }
    for (int i = 0; i < d; ++i) {
      m.X.block(e, d * i, 1, d) = g.exponent[i] * g.vector.transpose();
    }
  }
  return m;
}

bool is_named_space(const std::string& name) {
  return name == "zero" || name == "full" || name == "symmetric" || name == "skew" ||
         name == "diagonal";
}

MatrixSpace MatrixSpace::named(const std::string& name, int d) {
  if (d < 1) throw InvalidInput("matrix space dimension must be positive");
  MatrixSpace s;
  s.d_ = d;
  s.name_ = name;
  if (name == "zero") {
  } else if (name == "full") {
    // vec order: column j of A is contiguous.
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) s.basis_.push_back(unit_matrix(d, i, j));
  } else if (name == "diagonal") {
    for (int i = 0; i < d; ++i) s.basis_.push_back(unit_matrix(d, i, i));
  } else if (name == "symmetric") {
    for (int j = 0; j < d; ++j)
      for (int i = 0; i <= j; ++i)
        s.basis_.push_back(i == j ? unit_matrix(d, i, i)
                                  : Mat(unit_matrix(d, i, j) + unit_matrix(d, j, i)));
  } else if (name == "skew") {
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < j; ++i)
        s.basis_.push_back(unit_matrix(d, i, j) - unit_matrix(d, j, i));
  } else {
    throw InvalidInput("unknown matrix space '" + name + "'");
  }
  return s;
}

MatrixSpace MatrixSpace::custom(int d, std::vector<Mat> basis, std::string name, double tol) {
  if (d < 1) throw InvalidInput("matrix space dimension must be positive");
  for (const Mat& a : basis) {
    if (a.rows() != d || a.cols() != d) throw InvalidInput("matrix space basis element is not d x d");
  }
  MatrixSpace s;
  s.d_ = d;
  s.basis_ = std::move(basis);
  s.name_ = std::move(name);
  if (numeric_rank(s.embedding(), tol) != s.dim()) {
    throw InvalidInput("matrix space basis is linearly dependent");
  }
  return s;
}

Mat MatrixSpace::embedding() const {
  Mat out(d_ * d_, dim());
  for (int j = 0; j < dim(); ++j) out.col(j) = vectorize(basis_[j]);
  return out;
}

Mat MatrixSpace::matrix_of(const Vec& alpha) const {
  Mat a = Mat::Zero(d_, d_);
  for (int j = 0; j < dim(); ++j) a += alpha[j] * basis_[j];
  return a;
}

Mat restricted_operator(const CrystalFramework& fw, const MatrixSpace& space) {
  const int d = fw.dim();
  if (space.d() != d) throw InvalidInput("matrix space dimension does not match framework");
  const RigidityMatrices m = build_matrices(fw);
  Mat out(m.R.rows(), m.R.cols() + space.dim());
  out.leftCols(m.R.cols()) = m.R;
  for (int j = 0; j < space.dim(); ++j) {
    out.col(m.R.cols() + j) = m.X * vectorize(space.basis()[j] * fw.lattice.Z);
  }
  return out;
}

Mat affine_operator(const CrystalFramework& fw) {
  const RigidityMatrices m = build_matrices(fw);
  const int d = fw.dim();
  Mat out(m.R.rows(), m.R.cols() + d * d);
  out << m.R, m.X * kron(fw.lattice.Z.transpose(), Mat::Identity(d, d));
  return out;
}

Mat domain_embedding(const CrystalFramework& fw, const MatrixSpace& space) {
  const int d = fw.dim();
  if (space.d() != d) throw InvalidInput("matrix space dimension does not match framework");
  const int n = d * fw.num_vertices();
  Mat J = Mat::Zero(n + d * d, n + space.dim());
  J.topLeftCorner(n, n).setIdentity();
  J.bottomRightCorner(d * d, space.dim()) = space.embedding();
  return J;
}

Vec AffineVelocity::raw(const Mat& Z) const {
  Vec out(u.size() + A.size());
  out << u, vectorize(A * Z);
  return out;
}

AffineVelocity decode_velocity(const CrystalFramework& fw, const MatrixSpace& space,
                               const Vec& coords) {
  const int n = fw.dim() * fw.num_vertices();
  if (coords.size() != n + space.dim()) throw InvalidInput("coordinate vector has wrong length");
  return {coords.head(n), space.matrix_of(coords.tail(space.dim()))};
}

SubspaceBasis rigid_motion_space(const CrystalFramework& fw, const MatrixSpace& space) {
  require_valid(fw);
  const int d = fw.dim();
  if (space.d() != d) throw InvalidInput("matrix space dimension does not match framework");
  const int nv = fw.num_vertices();
  const int n = d * nv;
  const double tol = fw.tolerance;

  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) {
    Vec t = Vec::Zero(n + space.dim());
    for (int v = 0; v < nv; ++v) t[d * v + i] = 1.0;
    gens.push_back(t);
  }
  if (space.dim() > 0) {
    const Mat E = space.embedding();
    const SubspaceBasis skew = range_basis(MatrixSpace::named("skew", d).embedding(), tol);
    const SubspaceBasis admissible = intersect(skew, range_basis(E, tol));
    const auto solver = E.colPivHouseholderQr();
    for (int j = 0; j < admissible.dim(); ++j) {
      const Mat S = unvectorize(admissible.basis.col(j), d);
      Vec r(n + space.dim());
      for (int v = 0; v < nv; ++v) r.segment(d * v, d) = S * fw.vertices[v].position;
      r.tail(space.dim()) = solver.solve(Vec(-vectorize(S)));
      gens.push_back(r);
    }
  }
  Mat cols(n + space.dim(), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = gens[j];
  return range_basis(cols, tol);
}

SubspaceBasis flex_space(const CrystalFramework& fw, const MatrixSpace& space) {
  return kernel_basis(restricted_operator(fw, space), fw.tolerance);
}

SubspaceBasis stress_space(const CrystalFramework& fw, const MatrixSpace& space) {
  return cokernel_basis(restricted_operator(fw, space), fw.tolerance);
}

CountReport analyze_counts(const CrystalFramework& fw, const MatrixSpace& space) {
  const Mat op = restricted_operator(fw, space);
  const SubspaceBasis flex = kernel_basis(op, fw.tolerance);
  const SubspaceBasis stress = cokernel_basis(op, fw.tolerance);
  const SubspaceBasis rigid = rigid_motion_space(fw, space);

  CountReport c;
  c.mode = space.name();
  c.dof = fw.dim() * fw.num_vertices();
  c.dim_space = space.dim();
  c.num_edges = fw.num_edges();
  c.flex_dim = flex.dim();
  c.f = rigid.dim();
  c.m = c.flex_dim - c.f;
  c.s = stress.dim();
  c.identity_residual = (c.m - c.s) - (c.dof + c.dim_space - c.num_edges - c.f);
  c.containment_residual = containment_residual(rigid, flex);
  c.rigid_in_flex = c.containment_residual <= containment_tol(fw.tolerance);
  return c;
}

AffineRigidity is_affinely_rigid(const CrystalFramework& fw) {
  const int d = fw.dim();
  AffineRigidity r;
  r.rank = numeric_rank(build_matrices(fw).affine(), fw.tolerance);
  r.required_rank = d * fw.num_vertices() + d * (d - 1) / 2;
  r.rigid = r.rank == r.required_rank;
  return r;
}

double edge_deviation(const CrystalFramework& fw, const AffineVelocity& flex, double t) {
  require_valid(fw);
  const int d = fw.dim();
  if (!(t >= 0.0)) throw std::domain_error("edge_deviation requires t >= 0");
  if (flex.u.size() != d * fw.num_vertices() || flex.A.rows() != d || flex.A.cols() != d) {
    throw InvalidInput("affine velocity has wrong shape");
  }
  const Mat flow = Mat::Identity(d, d) - t * flex.A;
  const Eigen::FullPivLU<Mat> lu(flow);
  if (!lu.isInvertible() || std::abs(flow.determinant()) <= fw.tolerance) {
    throw std::domain_error("flow matrix I - tA is singular");
  }
  const Mat flowInv = lu.inverse();
  // A_t T_k A_t^{-1} x = x + A_t Z k.
  auto moved = [&](const VertexRef& ref) -> Vec {
    const Vec x = fw.vertices[ref.vertex].position + t * flex.u.segment(d * ref.vertex, d);
    return flow * (flowInv * x + fw.lattice.Z * ref.cell.cast<double>());
  };
  double worst = 0.0;
  for (const MotifEdge& e : fw.edges) {
    const double before = edge_geometry(fw, e).length;
    const double after = (moved(e.from) - moved(e.to)).norm();
    worst = std::max(worst, std::abs(before - after));
  }
  return worst;
}

}  // namespace crysrig
