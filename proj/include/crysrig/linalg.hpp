// Tolerance-based dense rank, kernel and cokernel computations.
//
// All decisions use the same singular-value threshold
//   tol_eff = tol * max(1, sigma_max) * max(rows, cols)
// so that integer dimension outputs are consistent across call sites.

#ifndef CRYSRIG_LINALG_HPP_
#define CRYSRIG_LINALG_HPP_

#include "crysrig/lattice.hpp"

namespace crysrig {

struct SubspaceBasis {
  int ambient_dim = 0;
  Mat basis;  // ambient_dim x dim, orthonormal columns
  double tol = kDefaultTolerance;

  int dim() const { return static_cast<int>(basis.cols()); }
  static SubspaceBasis empty(int ambient, double tol = kDefaultTolerance) {
    return {ambient, Mat(ambient, 0), tol};
  }
  /// Orthogonal projector onto the subspace.
  Mat projector() const { return basis * basis.transpose(); }
};

double effective_tolerance(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                           Eigen::Index cols, double tol);

int numeric_rank(const Mat& m, double tol = kDefaultTolerance);
SubspaceBasis kernel_basis(const Mat& m, double tol = kDefaultTolerance);
SubspaceBasis cokernel_basis(const Mat& m, double tol = kDefaultTolerance);

/// Orthonormal basis of the column space of `m`.
SubspaceBasis range_basis(const Mat& m, double tol = kDefaultTolerance);

/// span(a) intersected with span(b): kernel of the stacked complementary
/// projectors [I - P_a; I - P_b].
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);

/// Orthogonal complement of `sub` inside `outer` (sub assumed contained).
SubspaceBasis complement_within(const SubspaceBasis& outer, const SubspaceBasis& sub);

/// Largest distance of a basis vector of `sub` from span(`outer`).
double containment_residual(const SubspaceBasis& sub, const SubspaceBasis& outer);

Mat kron(const Mat& a, const Mat& b);

/// Column-stacked vec(A) and its inverse.
Vec vectorize(const Mat& a);
Mat unvectorize(const Vec& v, int d);

}  // namespace crysrig

#endif  // CRYSRIG_LINALG_HPP_
