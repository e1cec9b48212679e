// Space-group elements of a crystal framework and the finite-dimensional
// representations they induce on velocities (u, A) and periodic edge
// vectors, with the symmetry-adapted counts built on them.
//
// Coordinates on the velocity side are (u, vec A), d|F_v| + d^2 entries.
// A resolved element g acts by
//   mu_v:  (mu u)_{g.kappa} = B u_kappa
//   Phi_1: (Phi_1 A)_{g.kappa} = B A B^T Z k_g(kappa)
//   Phi_2: A -> B A B^T
//   pi_e:  eta_e -> eta_{g.e}
// where B p_kappa + c = p_{g.kappa} + Z k_g(kappa). The translation part c
// never enters: rigidity rows annihilate uniform translations.

#ifndef CRYSRIG_SYMMETRY_HPP_
#define CRYSRIG_SYMMETRY_HPP_

#include "crysrig/lattice.hpp"
#include "crysrig/linalg.hpp"
#include "crysrig/rigidity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crysrig {

class SymmetryError : public InvalidInput {
 public:
  enum class Kind { Shape, NotOrthogonal, LatticeIncompatible, NotASymmetry, NotInvariant };
  SymmetryError(Kind kind, const std::string& what) : InvalidInput(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct VertexImage {
  int vertex = 0;
  CellIndex offset;  // k_g(kappa)
};

struct EdgeImage {
  int edge = 0;
  bool reversed = false;
  CellIndex offset;  // lattice translation taking motif edge `edge` onto the image
};

struct SymmetryElement {
  std::string name;
  Mat B;
  Vec c;
  Eigen::MatrixXi lattice_map;  // M_B with B Z = Z M_B
  std::vector<VertexImage> vertex_action;
  std::vector<EdgeImage> edge_action;

  int dim() const { return static_cast<int>(B.rows()); }
  std::vector<int> vertex_permutation() const;
  std::vector<int> edge_permutation() const;
};

/// Matches the images of all motif vertices and edges under x -> B x + c.
/// Throws SymmetryError (NotOrthogonal, LatticeIncompatible, NotASymmetry).
SymmetryElement resolve_symmetry(const CrystalFramework& fw, const Mat& B, const Vec& c,
                                 const std::string& name);

SymmetryElement identity_element(const CrystalFramework& fw);

/// Resolves every declared symmetry of `fw`; errors name the element.
std::vector<SymmetryElement> resolve_declared(const CrystalFramework& fw);

/// g h (apply h first).
SymmetryElement compose(const CrystalFramework& fw, const SymmetryElement& g,
                        const SymmetryElement& h);

bool is_separable(const SymmetryElement& g);

struct RepresentationMatrices {
  Mat mu_v;  // d|F_v| x d|F_v|
  Mat pi_e;  // |F_e| x |F_e|
  Mat phi1;  // d|F_v| x d^2
  Mat phi2;  // d^2 x d^2
  Mat pi_v;  // [[mu_v, phi1], [0, phi2]]
};

RepresentationMatrices representation_matrices(const CrystalFramework& fw,
                                               const SymmetryElement& g);

bool is_conjugation_invariant(const MatrixSpace& space, const Mat& B,
                              double tol = kDefaultTolerance);

/// max |pi_e R_A - R_A pi_v| with R_A the affine operator in (u, vec A)
/// coordinates, restricted to the domain R^{d|F_v|} + E. Throws
/// SymmetryError(NotInvariant) when E is not stable under A -> B A B^T.
double verify_symmetry_equation(const CrystalFramework& fw, const SymmetryElement& g,
                                const MatrixSpace& space);
double verify_symmetry_equation(const CrystalFramework& fw, const SymmetryElement& g);

/// Matrices commuting with B.
MatrixSpace commutant_basis(const Mat& B, double tol = kDefaultTolerance);

/// Vectors fixed by P: kernel of P - I.
SubspaceBasis fixed_space(const Mat& P, double tol = kDefaultTolerance);

/// Orbits of the cyclic group generated by g on motif edge classes.
std::vector<std::vector<int>> edge_orbits(const SymmetryElement& g);

struct SymmetryCountReport {
  std::string name;
  bool separable = false;
  int dim_F_g = 0;
  int dim_E_g = 0;
  int dim_H_v_g = 0;  // dim of the pi_v-fixed space
  int e_g = 0;
  int f_g = 0;
  int flex_g = 0;
  int m_g = 0;
  int s_g = 0;
  int identity_residual = 0;
  bool predictor_fires = false;
};

SymmetryCountReport symmetry_counts(const CrystalFramework& fw, const SymmetryElement& g);

/// True when e_g < dim H_v^g - f_g, which forces a g-symmetric mechanism.
/// For separable g, dim H_v^g = dim F_g + dim E_g.
bool flexibility_predictor(const CrystalFramework& fw, const SymmetryElement& g);

struct CharacterRow {
  std::string name;
  std::string space;
  double trace_v = 0.0;
  double trace_e = 0.0;
  double trace_rig = 0.0;
  double trace_flex = 0.0;
  double trace_mech = 0.0;
  double trace_str = 0.0;
  double residual = 0.0;  // (mech - str) - (v - e - rig)
};

CharacterRow character_row(const CrystalFramework& fw, const SymmetryElement& g,
                           const MatrixSpace& space);

}  // namespace crysrig

#endif  // CRYSRIG_SYMMETRY_HPP_
