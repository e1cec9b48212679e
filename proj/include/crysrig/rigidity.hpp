// Rigidity matrices of a crystal framework and the Maxwell-Calladine counts
// derived from them.
//
// Sign convention: an affine velocity (u, A) extends to the infinite
// framework as u_{kappa,k} = u_kappa - A Z k, and row e of the affine
// rigidity matrix evaluates <v_e, u_kappa - u_tau + A Z delta(e)>. Under this
// convention the infinitesimal rotation x -> S x (S skew) is (u_kappa =
// S p_kappa, A = -S).

#ifndef CRYSRIG_RIGIDITY_HPP_
#define CRYSRIG_RIGIDITY_HPP_

#include "crysrig/lattice.hpp"
#include "crysrig/linalg.hpp"

#include <string>
#include <vector>

namespace crysrig {

/// R: |F_e| x d|F_v| motif rigidity matrix. X: |F_e| x d^2 affine block
/// acting on vec(M) for M = A Z (columns stacked).
struct RigidityMatrices {
  Mat R;
  Mat X;

  /// [R X], the operator on (u, vec(AZ)).
  Mat affine() const;
};

RigidityMatrices build_matrices(const CrystalFramework& fw);

/// Linear space E of admissible affine velocity matrices.
class MatrixSpace {
 public:
  MatrixSpace() = default;

  /// One of "zero", "full", "symmetric", "skew", "diagonal".
  static MatrixSpace named(const std::string& name, int d);
  static MatrixSpace zero(int d) { return named("zero", d); }
  static MatrixSpace full(int d) { return named("full", d); }
  /// Throws InvalidInput when the matrices are dependent or mis-shaped.
  static MatrixSpace custom(int d, std::vector<Mat> basis, std::string name = "custom",
                            double tol = kDefaultTolerance);

  int d() const { return d_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }
  const std::string& name() const { return name_; }

  /// d^2 x dim matrix with columns vec(A_j).
  Mat embedding() const;
  /// Matrix with coordinates `alpha` in this basis.
  Mat matrix_of(const Vec& alpha) const;

 private:
  int d_ = 0;
  std::vector<Mat> basis_;
  std::string name_;
};

bool is_named_space(const std::string& name);

/// [R | X L_E] where L_E maps the j-th basis matrix A_j to vec(A_j Z).
/// Its domain coordinates are (u, alpha) with A = sum_j alpha_j A_j.
Mat restricted_operator(const CrystalFramework& fw, const MatrixSpace& space);

/// The affine operator in (u, vec A) coordinates: [R | X (Z^T kron I)].
/// Identical to restricted_operator(fw, MatrixSpace::full(d)).
Mat affine_operator(const CrystalFramework& fw);

/// Embeds (u, alpha) coordinates of `space` into (u, vec A) coordinates.
Mat domain_embedding(const CrystalFramework& fw, const MatrixSpace& space);

struct AffineVelocity {
  Vec u;  // d|F_v|, blocks u_kappa
  Mat A;  // d x d

  /// Coordinates (u, vec(A Z)) on which [R X] acts.
  Vec raw(const Mat& Z) const;
};

/// Decodes domain coordinates (u, alpha) of restricted_operator(fw, space).
AffineVelocity decode_velocity(const CrystalFramework& fw, const MatrixSpace& space,
                               const Vec& coords);

/// Infinitesimal rigid motions admissible for E, in (u, alpha) coordinates:
/// d translations plus the rotations S with -S in E.
SubspaceBasis rigid_motion_space(const CrystalFramework& fw, const MatrixSpace& space);

SubspaceBasis flex_space(const CrystalFramework& fw, const MatrixSpace& space);
SubspaceBasis stress_space(const CrystalFramework& fw, const MatrixSpace& space);

struct CountReport {
  std::string mode;
  int dof = 0;        // d |F_v|
  int dim_space = 0;  // dim E
  int num_edges = 0;  // |F_e|
  int flex_dim = 0;
  int m = 0;
  int s = 0;
  int f = 0;
  int identity_residual = 0;  // (m - s) - (dof + dim E - |F_e| - f)
  bool rigid_in_flex = true;
  double containment_residual = 0.0;
};

CountReport analyze_counts(const CrystalFramework& fw, const MatrixSpace& space);

struct AffineRigidity {
  bool rigid = false;
  int rank = 0;
  int required_rank = 0;  // d|F_v| + d(d-1)/2
};

AffineRigidity is_affinely_rigid(const CrystalFramework& fw);

/// Largest edge-length change when every framework vertex (kappa, k) moves
/// to A_t T_k A_t^{-1} (p_kappa + t u_kappa) with the flow A_t = I - t A.
/// Throws std::domain_error when A_t is singular or t < 0.
double edge_deviation(const CrystalFramework& fw, const AffineVelocity& flex, double t);

}  // namespace crysrig

#endif  // CRYSRIG_RIGIDITY_HPP_
