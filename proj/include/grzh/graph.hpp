#pragma once
// The generalized Grassmann graph G_r(m,n,Z_h): vertices are the m-subspaces
// of Z_h^n, two distinct vertices adjacent when their intersection has
// dimension > m - r. The graph is kept implicit (adjacency decided from the
// canonical representations); desk-scale instances are materialized into a
// bitset adjacency matrix for the exact branch-and-bound solvers.

#include <map>

#include "grzh/subspace.hpp"

namespace grzh {

struct GraphSpec {
  RingPtr ring;
  int n, m, r;

  GraphSpec(RingPtr ring_, int n_, int m_, int r_)
      : ring(std::move(ring_)), n(n_), m(m_), r(r_) {
    if (!(2 <= r && r <= m + 1 && m + 1 <= n))
      throw invalid_param_error("graph parameters need 2 <= r <= m+1 <= n");
  }

  bigint vertex_count() const { return count_subspaces(*ring, n, m); }
};

bool adjacent(const GraphSpec& g, const Subspace& A, const Subspace& B);

struct VertexSet {
  std::vector<Subspace> list;          // enumeration order
  std::map<Subspace, int> index;

  int find(const Subspace& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

VertexSet materialize_vertices(const GraphSpec& g, std::uint64_t cap);

struct AdjacencyMatrix {
  int nv = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;  // row-major, nv rows of `words` words

  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int n)
      : nv(n), words((static_cast<std::size_t>(n) + 63) / 64),
        bits(static_cast<std::size_t>(n) * words, 0) {}

  const std::uint64_t* row(int i) const { return bits.data() + i * words; }
  std::uint64_t* row(int i) { return bits.data() + i * words; }
  bool get(int i, int j) const { return (row(i)[j / 64] >> (j % 64)) & 1; }
  void set(int i, int j) { row(i)[j / 64] |= std::uint64_t(1) << (j % 64); }

  std::uint64_t edge_count() const;
  AdjacencyMatrix complement() const;  // loop-free
};

// threads > 1 splits the pair loop by row block; the result is identical for
// any thread count.
AdjacencyMatrix build_adjacency(const GraphSpec& g, const VertexSet& vs,
                                int threads = 1);

struct SolveResult {
  int size = 0;
  std::vector<int> witness;
};

// Exact maximum clique, branch and bound with a greedy coloring bound.
// Deterministic: vertices are handled in index order throughout.
SolveResult max_clique(const AdjacencyMatrix& adj);
SolveResult max_independent_set(const AdjacencyMatrix& adj);

bool is_clique(const GraphSpec& g, const std::vector<Subspace>& family);
bool is_independent(const GraphSpec& g, const std::vector<Subspace>& family);

bool is_connected(const AdjacencyMatrix& adj);

// Verifies that duality is an adjacency-preserving bijection from
// G_r(m,n,Z_h) onto G_r(n-m,n,Z_h).
bool dual_isomorphism_check(const GraphSpec& g, std::uint64_t cap);

}  // namespace grzh
