// Shared helpers for the test binaries: random generators and framework
// variants that describe the same infinite framework.

#ifndef CRYSRIG_TESTS_SUPPORT_HPP_
#define CRYSRIG_TESTS_SUPPORT_HPP_

#include "crysrig/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace crysrig::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CRYSRIG_DATA_DIR) + "/" + name;
}

inline Vec random_vec(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline Mat random_mat(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline CellIndex random_cell(std::mt19937& rng, int d, int range = 2) {
  std::uniform_int_distribution<int> dist(-range, range);
  CellIndex k(d);
  for (int i = 0; i < d; ++i) k[i] = dist(rng);
  return k;
}

/// Same infinite framework, relabelled: vertex classes permuted (recorded
/// in `vertex_perm`, new index of old vertex), edges shuffled, flipped and
/// translated, and the whole motif shifted by a lattice-free translation.
struct Variant {
  CrystalFramework fw;
  std::vector<int> vertex_perm;
  std::vector<int> edge_source;  // old edge index of each new edge
  std::vector<bool> flipped;
};

inline Variant random_variant(const CrystalFramework& fw, std::mt19937& rng) {
  const int d = fw.dim();
  const int nv = fw.num_vertices();
  const int ne = fw.num_edges();
  Variant out;
  out.vertex_perm.resize(nv);
  std::iota(out.vertex_perm.begin(), out.vertex_perm.end(), 0);
  std::shuffle(out.vertex_perm.begin(), out.vertex_perm.end(), rng);
  out.edge_source.resize(ne);
  std::iota(out.edge_source.begin(), out.edge_source.end(), 0);
  std::shuffle(out.edge_source.begin(), out.edge_source.end(), rng);

  out.fw.lattice = fw.lattice;
  out.fw.tolerance = fw.tolerance;
  out.fw.vertices.resize(nv);
  const Vec shift = random_vec(rng, d);
  for (int k = 0; k < nv; ++k) {
    out.fw.vertices[out.vertex_perm[k]] = {fw.vertices[k].position + shift, fw.vertices[k].name};
  }
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < ne; ++i) {
    MotifEdge e = fw.edges[out.edge_source[i]];
    e.from.vertex = out.vertex_perm[e.from.vertex];
    e.to.vertex = out.vertex_perm[e.to.vertex];
    const CellIndex l = random_cell(rng, d);
    e.from.cell += l;
    e.to.cell += l;
    const bool flip = coin(rng);
    out.flipped.push_back(flip);
    out.fw.edges.push_back(flip ? e.reversed() : e);
  }
  return out;
}

}  // namespace crysrig::testing

#endif  // CRYSRIG_TESTS_SUPPORT_HPP_
