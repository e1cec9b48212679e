#include "crysrig/rigidity.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace crysrig;
using crysrig::testing::random_mat;
using crysrig::testing::random_vec;

namespace {

const std::vector<std::string> kSpaces = {"zero", "full", "symmetric", "skew", "diagonal"};

// Row value written out from positions only.
double row_value(const CrystalFramework& fw, const MotifEdge& e, const Vec& u, const Mat& A) {
  const int d = fw.dim();
  const Vec v = point_of(fw, e.from) - point_of(fw, e.to);
  const Vec delta = (e.to.cell - e.from.cell).cast<double>();
  Vec w = A * fw.lattice.Z * delta;
  if (e.from.vertex != e.to.vertex) {
    w += u.segment(d * e.from.vertex, d) - u.segment(d * e.to.vertex, d);
  }
  return v.dot(w);
}

// Rank via elimination on the row-reduced echelon form (independent of SVD).
int rank_by_elimination(Mat m) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = 0;
    m.col(col).tail(m.rows() - rank).cwiseAbs().maxCoeff(&pivot);
    pivot += rank;
    if (std::abs(m(pivot, col)) < 1e-10) continue;
    m.row(rank).swap(m.row(pivot));
    for (int r = 0; r < m.rows(); ++r) {
      if (r != rank) m.row(r) -= (m(r, col) / m(rank, col)) * m.row(rank);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("matrix shapes") {
  const auto kag = build_matrices(builtin_framework("kagome"));
  CHECK(kag.R.rows() == 6);
  CHECK(kag.R.cols() == 6);
  CHECK(kag.affine().cols() == 10);

  const auto hex_fw = builtin_framework("hexahedron");
  const auto hex = build_matrices(hex_fw);
  CHECK(hex.R.rows() == 9);
  CHECK(hex.R.cols() == 6);
  CHECK(hex.affine().cols() == 15);
  int reflexive = 0;
  for (int e = 0; e < hex_fw.num_edges(); ++e) {
    if (hex_fw.edges[e].from.vertex == hex_fw.edges[e].to.vertex) {
      ++reflexive;
      CHECK(hex.R.row(e).isZero());
    }
  }
  CHECK(reflexive == 3);
}

TEST_CASE("square grid by hand") {
  const auto m = build_matrices(builtin_framework("square_grid"));
  CHECK(m.R.rows() == 2);
  CHECK(m.R.isZero());
  Mat X(2, 4);
  X << -1, 0, 0, 0, 0, 0, 0, -1;
  CHECK(m.X.isApprox(X));
}

TEST_CASE("row formula on random velocities") {
  std::mt19937 rng(17);
  for (const auto& name : builtin_names()) {
    const auto fw = builtin_framework(name);
    const int d = fw.dim();
    const Mat RA = build_matrices(fw).affine();
    for (int trial = 0; trial < 100; ++trial) {
      const AffineVelocity vel{random_vec(rng, d * fw.num_vertices()), random_mat(rng, d, d)};
      const Vec rows = RA * vel.raw(fw.lattice.Z);
      for (int e = 0; e < fw.num_edges(); ++e) {
        CHECK(rows[e] == doctest::Approx(row_value(fw, fw.edges[e], vel.u, vel.A)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("restricted operator") {
  const auto fw = builtin_framework("kagome");
  const auto m = build_matrices(fw);
  CHECK(restricted_operator(fw, MatrixSpace::zero(2)).isApprox(m.R));
  const Mat full = restricted_operator(fw, MatrixSpace::full(2));
  CHECK(full.rows() == 6);
  CHECK(full.cols() == 10);
  CHECK(numeric_rank(full) == numeric_rank(m.affine()));
  CHECK((full - affine_operator(fw)).norm() < 1e-14);

  const auto sq = builtin_framework("square_grid");
  CHECK(numeric_rank(restricted_operator(sq, MatrixSpace::full(2))) == 2);

  // (u, alpha) -> (u, vec A) -> (u, vec AZ) commutes with the operators.
  std::mt19937 rng(2);
  for (const auto& name : kSpaces) {
    const auto space = MatrixSpace::named(name, 2);
    const Vec coords = random_vec(rng, 6 + space.dim());
    const Vec lhs = restricted_operator(fw, space) * coords;
    const Vec rhs = affine_operator(fw) * (domain_embedding(fw, space) * coords);
    CHECK((lhs - rhs).norm() < 1e-12);
    const auto vel = decode_velocity(fw, space, coords);
    CHECK((m.affine() * vel.raw(fw.lattice.Z) - lhs).norm() < 1e-12);
  }
}

TEST_CASE("matrix spaces") {
  CHECK(MatrixSpace::named("zero", 3).dim() == 0);
  CHECK(MatrixSpace::named("full", 3).dim() == 9);
  CHECK(MatrixSpace::named("symmetric", 3).dim() == 6);
  CHECK(MatrixSpace::named("skew", 3).dim() == 3);
  CHECK(MatrixSpace::named("diagonal", 3).dim() == 3);
  CHECK_THROWS_AS(MatrixSpace::named("bogus", 2), InvalidInput);
  const Mat a = Mat::Identity(2, 2);
  CHECK_THROWS_AS(MatrixSpace::custom(2, {a, Mat(2.0 * a)}), InvalidInput);
  CHECK_THROWS_AS(MatrixSpace::custom(2, {Mat::Identity(3, 3)}), InvalidInput);
  const auto custom = MatrixSpace::custom(2, {a});
  CHECK(custom.matrix_of(Vec::Constant(1, 2.0)).isApprox(2.0 * a));
}

TEST_CASE("rigid motions") {
  for (const auto& name : builtin_names()) {
    const auto fw = builtin_framework(name);
    const int d = fw.dim();
    CHECK(rigid_motion_space(fw, MatrixSpace::zero(d)).dim() == d);
    CHECK(rigid_motion_space(fw, MatrixSpace::full(d)).dim() == d * (d + 1) / 2);
    for (const auto& s : kSpaces) {
      const auto space = MatrixSpace::named(s, d);
      const auto rig = rigid_motion_space(fw, space);
      CHECK(containment_residual(rig, flex_space(fw, space)) < 10 * fw.tolerance);
    }
  }
  // The rotation x -> S x is (u = S p, A = -S) under the library convention.
  const auto fw = builtin_framework("kagome");
  Mat S(2, 2);
  S << 0, -1, 1, 0;
  AffineVelocity rot{Vec(6), -S};
  for (int k = 0; k < 3; ++k) rot.u.segment(2 * k, 2) = S * fw.vertices[k].position;
  CHECK((build_matrices(fw).affine() * rot.raw(fw.lattice.Z)).norm() < 1e-14);
}

TEST_CASE("flex and stress dimensions") {
  const auto kag = builtin_framework("kagome");
  CHECK(flex_space(kag, MatrixSpace::zero(2)).dim() == 3);
  CHECK(stress_space(kag, MatrixSpace::zero(2)).dim() == 3);
  CHECK(flex_space(kag, MatrixSpace::full(2)).dim() == 4);
  CHECK(stress_space(kag, MatrixSpace::full(2)).dim() == 0);

  const auto sq = builtin_framework("square_grid");
  const Mat op = restricted_operator(sq, MatrixSpace::full(2));
  CHECK(flex_space(sq, MatrixSpace::full(2)).dim() == 6 - rank_by_elimination(op));
  CHECK(flex_space(sq, MatrixSpace::full(2)).dim() == 4);
  CHECK(stress_space(sq, MatrixSpace::full(2)).dim() == 0);
}

TEST_CASE("Maxwell-Calladine counts") {
  const auto kz = analyze_counts(builtin_framework("kagome"), MatrixSpace::zero(2));
  CHECK(kz.m == 1);
  CHECK(kz.s == 3);
  CHECK(kz.f == 2);
  CHECK(kz.identity_residual == 0);

  const auto kf = analyze_counts(builtin_framework("kagome"), MatrixSpace::full(2));
  CHECK(kf.m == 1);
  CHECK(kf.s == 0);
  CHECK(kf.f == 3);

  const auto hz = analyze_counts(builtin_framework("hexahedron"), MatrixSpace::zero(3));
  CHECK(hz.m == 0);
  CHECK(hz.f == 3);
  CHECK(hz.s == 6);

  const auto sq = analyze_counts(builtin_framework("square_grid"), MatrixSpace::zero(2));
  CHECK(sq.m == 0);
  CHECK(sq.s == 2);

  const auto sq21 = analyze_counts(supercell(builtin_framework("square_grid"),
                                             (CellIndex(2) << 2, 1).finished()),
                                   MatrixSpace::zero(2));
  CHECK(sq21.m - sq21.s == 4 - 4 - 2);
  CHECK(sq21.identity_residual == 0);

  for (const auto& name : builtin_names()) {
    const auto fw = builtin_framework(name);
    for (const auto& s : kSpaces) {
      INFO(name << " " << s);
      const auto c = analyze_counts(fw, MatrixSpace::named(s, fw.dim()));
      CHECK(c.identity_residual == 0);
      CHECK(c.rigid_in_flex);
      CHECK(c.m >= 0);
      CHECK(c.s >= 0);
      CHECK(c.f >= 0);
    }
  }
}

TEST_CASE("edge-less framework") {
  CrystalFramework fw;
  fw.lattice.Z = Mat::Identity(2, 2);
  fw.vertices = {{Vec::Zero(2), "a"}};
  const auto c = analyze_counts(fw, MatrixSpace::zero(2));
  CHECK(c.num_edges == 0);
  CHECK(c.s == 0);
  CHECK(c.m == 0);
  CHECK(c.identity_residual == 0);
  CHECK(analyze_counts(fw, MatrixSpace::full(2)).m == 3);
}

TEST_CASE("orientation and translation of edges") {
  std::mt19937 rng(23);
  for (const auto& name : builtin_names()) {
    const auto fw = builtin_framework(name);
    const Mat base = build_matrices(fw).affine();
    for (int e = 0; e < fw.num_edges(); ++e) {
      auto flipped = fw;
      flipped.edges[e] = fw.edges[e].reversed();
      const Mat m = build_matrices(flipped).affine();
      // The row formula is symmetric in the endpoints: v and delta both flip.
      CHECK((m - base).norm() < 1e-14);
      for (const auto& s : kSpaces) {
        const auto a = analyze_counts(fw, MatrixSpace::named(s, fw.dim()));
        const auto b = analyze_counts(flipped, MatrixSpace::named(s, fw.dim()));
        CHECK(a.m == b.m);
        CHECK(a.s == b.s);
        CHECK(a.flex_dim == b.flex_dim);
      }
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto variant = testing::random_variant(fw, rng);
      for (const auto& s : kSpaces) {
        const auto a = analyze_counts(fw, MatrixSpace::named(s, fw.dim()));
        const auto b = analyze_counts(variant.fw, MatrixSpace::named(s, fw.dim()));
        CHECK(a.m == b.m);
        CHECK(a.s == b.s);
        CHECK(a.f == b.f);
      }
    }
  }
}

TEST_CASE("affine rigidity") {
  const auto kag = is_affinely_rigid(builtin_framework("kagome"));
  CHECK_FALSE(kag.rigid);
  CHECK(kag.rank == 6);
  CHECK(kag.required_rank == 7);
  CHECK_FALSE(is_affinely_rigid(builtin_framework("square_grid")).rigid);
  CHECK(is_affinely_rigid(builtin_framework("square_grid")).rank == 2);
  const auto hex = is_affinely_rigid(builtin_framework("hexahedron"));
  CHECK(hex.rigid);
  CHECK(hex.rank == hex.required_rank);
  for (const auto& name : builtin_names()) {
    const auto fw = builtin_framework(name);
    const auto r = is_affinely_rigid(fw);
    if (r.rigid && fw.dim() == 2) CHECK(r.rank == 2 * fw.num_vertices() + 1);
  }
}

TEST_CASE("edge deviation") {
  const auto fw = builtin_framework("kagome");
  CHECK(edge_deviation(fw, {Vec::Zero(6), Mat::Zero(2, 2)}, 0.3) == 0.0);
  const Vec shift = (Vec(6) << 1, 2, 1, 2, 1, 2).finished();
  CHECK(edge_deviation(fw, {shift, Mat::Zero(2, 2)}, 0.1) < 1e-14);

  const auto flex = flex_space(fw, MatrixSpace::zero(2));
  const auto rig = rigid_motion_space(fw, MatrixSpace::zero(2));
  const auto mech = complement_within(flex, rig);
  REQUIRE(mech.dim() == 1);
  const auto vel = decode_velocity(fw, MatrixSpace::zero(2), mech.basis.col(0));
  const double ratio = edge_deviation(fw, vel, 1e-2) / edge_deviation(fw, vel, 1e-3);
  CHECK(ratio == doctest::Approx(100.0).epsilon(0.05));

  CHECK_THROWS_AS(edge_deviation(fw, vel, -1.0), std::domain_error);
  CHECK_THROWS_AS(edge_deviation(fw, {Vec::Zero(6), Mat::Identity(2, 2)}, 1.0), std::domain_error);
}
