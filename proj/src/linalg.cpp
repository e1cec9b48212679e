#include "crysrig/linalg.hpp"

#include <algorithm>

namespace crysrig {

namespace {

struct Decomposition {
  Mat U;
  Mat V;
  Eigen::VectorXd sigma;
  int rank = 0;
};

Decomposition decompose(const Mat& m, double tol) {
  Decomposition out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows == 0 || cols == 0) {
    out.U = Mat::Identity(rows, rows);
    out.V = Mat::Identity(cols, cols);
    out.sigma = Eigen::VectorXd(0);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.sigma = svd.singularValues();
  const double cut = effective_tolerance(out.sigma, rows, cols, tol);
  out.rank = static_cast<int>((out.sigma.array() > cut).count());
  return out;
}

}  // namespace

double effective_tolerance(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                           Eigen::Index cols, double tol) {
  const double smax = singular_values.size() ? singular_values.maxCoeff() : 0.0;
  return tol * std::max(1.0, smax) * static_cast<double>(std::max(rows, cols));
}

int numeric_rank(const Mat& m, double tol) { return decompose(m, tol).rank; }

SubspaceBasis kernel_basis(const Mat& m, double tol) {
  const Decomposition dec = decompose(m, tol);
  const Eigen::Index n = m.cols();
  return {static_cast<int>(n), dec.V.rightCols(n - dec.rank), tol};
}

SubspaceBasis cokernel_basis(const Mat& m, double tol) {
  const Decomposition dec = decompose(m, tol);
  const Eigen::Index n = m.rows();
  return {static_cast<int>(n), dec.U.rightCols(n - dec.rank), tol};
}

SubspaceBasis range_basis(const Mat& m, double tol) {
  const Decomposition dec = decompose(m, tol);
  return {static_cast<int>(m.rows()), dec.U.leftCols(dec.rank), tol};
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  const double tol = std::max(a.tol, b.tol);
  const int n = a.ambient_dim;
  if (a.dim() == 0 || b.dim() == 0) return SubspaceBasis::empty(n, tol);
  Mat stacked(2 * n, n);
  stacked.topRows(n) = Mat::Identity(n, n) - a.projector();
  stacked.bottomRows(n) = Mat::Identity(n, n) - b.projector();
  return kernel_basis(stacked, tol);
}

SubspaceBasis complement_within(const SubspaceBasis& outer, const SubspaceBasis& sub) {
  const double tol = std::max(outer.tol, sub.tol);
  const int n = outer.ambient_dim;
  if (outer.dim() == 0) return SubspaceBasis::empty(n, tol);
  const Mat residual = outer.basis - sub.basis * (sub.basis.transpose() * outer.basis);
  const Decomposition dec = decompose(residual, tol);
  const int keep = std::max(0, outer.dim() - sub.dim());
  return {n, dec.U.leftCols(std::min(keep, dec.rank)), tol};
}

double containment_residual(const SubspaceBasis& sub, const SubspaceBasis& outer) {
  if (sub.dim() == 0) return 0.0;
  const Mat r = sub.basis - outer.basis * (outer.basis.transpose() * sub.basis);
  return r.colwise().norm().maxCoeff();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec vectorize(const Mat& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

Mat unvectorize(const Vec& v, int d) { return Eigen::Map<const Mat>(v.data(), d, d); }

}  // namespace crysrig
