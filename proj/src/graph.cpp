#include "grzh/graph.hpp"

#include <algorithm>
#include <thread>

#include "grzh/kernels.hpp"

namespace grzh {

bool adjacent(const GraphSpec& g, const Subspace& A, const Subspace& B) {
  if (A.dim() != g.m || B.dim() != g.m || A.ambient() != g.n || B.ambient() != g.n)
    throw invalid_param_error("not a vertex of this graph");
  if (A == B) return false;
  return dim_intersection(A, B) > g.m - g.r;
}

VertexSet materialize_vertices(const GraphSpec& g, std::uint64_t cap) {
  VertexSet vs;
  SubspaceEnumerator en(g.ring, g.n, g.m, cap);
  vs.list.reserve(en.total());
  while (auto s = en.next()) vs.list.push_back(std::move(*s));
  for (int i = 0; i < static_cast<int>(vs.list.size()); ++i)
    vs.index.emplace(vs.list[i], i);
  return vs;
}

std::uint64_t AdjacencyMatrix::edge_count() const {
  return kern::popcount(bits.data(), bits.size()) / 2;
}

AdjacencyMatrix AdjacencyMatrix::complement() const {
  AdjacencyMatrix c(nv);
  for (int i = 0; i < nv; ++i) {
    const std::uint64_t* src = row(i);
    std::uint64_t* dst = c.row(i);
    for (std::size_t w = 0; w < words; ++w) dst[w] = ~src[w];
    // mask tail bits and the diagonal
    if (nv % 64) dst[words - 1] &= (std::uint64_t(1) << (nv % 64)) - 1;
    dst[i / 64] &= ~(std::uint64_t(1) << (i % 64));
  }
  return c;
}

AdjacencyMatrix build_adjacency(const GraphSpec& g, const VertexSet& vs,
                                int threads) {
  const int nv = static_cast<int>(vs.list.size());
  AdjacencyMatrix adj(nv);
  const int mr = g.m - g.r;
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < nv; ++j)
        if (dim_intersection(vs.list[i], vs.list[j]) > mr) adj.set(i, j);
  };
  threads = std::max(1, threads);
  if (threads == 1 || nv < 64) {
    work(0, nv);
  } else {
    // interleave-free row partition; each thread writes its own rows only
    std::vector<std::thread> pool;
    std::vector<int> cuts(threads + 1, 0);
    // balance the triangular loop: row i costs about nv - i pairs
    double total = 0.5 * nv * (nv + 1);
    int row = 0;
    for (int t = 1; t < threads; ++t) {
      double want = total * t / threads;
      double acc = 0;
      int i = cuts[t - 1];
      for (; i < nv && acc < want; ++i) acc += nv - i;
      cuts[t] = std::max(i, cuts[t - 1]);
      (void)row;
    }
    cuts[threads] = nv;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, cuts[t], cuts[t + 1]);
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (adj.get(i, j)) adj.set(j, i);
  return adj;
}

// ------------------------------------------------------------ exact solvers

namespace {

class CliqueSolver {
 public:
  explicit CliqueSolver(const AdjacencyMatrix& adj) : adj_(adj), W_(adj.words) {}

  SolveResult solve() {
    std::vector<std::uint64_t> all(W_, 0);
    for (int v = 0; v < adj_.nv; ++v) all[v / 64] |= std::uint64_t(1) << (v % 64);
    expand(all);
    return {best_, best_witness_};
  }

 private:
  void collect(const std::vector<std::uint64_t>& bs, std::vector<int>& out) const {
    out.clear();
    for (std::size_t w = 0; w < W_; ++w) {
      std::uint64_t x = bs[w];
      while (x) {
        int b = std::countr_zero(x);
        out.push_back(static_cast<int>(w * 64 + b));
        x &= x - 1;
      }
    }
  }

  // Greedy coloring in index order; emits vertices sorted by color class.
  void color_sort(const std::vector<std::uint64_t>& P, std::vector<int>& order,
                  std::vector<int>& color) const {
    std::vector<int> verts;
    collect(P, verts);
    std::vector<std::vector<std::uint64_t>> class_bits;
    std::vector<std::vector<int>> class_members;
    for (int v : verts) {
      bool placed = false;
      for (std::size_t c = 0; c < class_bits.size(); ++c) {
        if (!kern::intersects(class_bits[c].data(), adj_.row(v), W_)) {
          class_bits[c][v / 64] |= std::uint64_t(1) << (v % 64);
          class_members[c].push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        class_bits.emplace_back(W_, 0);
        class_bits.back()[v / 64] |= std::uint64_t(1) << (v % 64);
        class_members.emplace_back(1, v);
      }
    }
    order.clear();
    color.clear();
    for (std::size_t c = 0; c < class_members.size(); ++c)
      for (int v : class_members[c]) {
        order.push_back(v);
        color.push_back(static_cast<int>(c) + 1);
      }
  }

  void expand(std::vector<std::uint64_t>& P) {
    if (kern::popcount(P.data(), W_) == 0) {
      if (static_cast<int>(R_.size()) > best_) {
        best_ = static_cast<int>(R_.size());
        best_witness_ = R_;
      }
      return;
    }
    std::vector<int> order, color;
    color_sort(P, order, color);
    std::vector<std::uint64_t> live = P;
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (static_cast<int>(R_.size()) + color[idx] <= best_) return;
      int v = order[idx];
      R_.push_back(v);
      std::vector<std::uint64_t> child(W_);
      kern::and_into(child.data(), live.data(), adj_.row(v), W_);
      expand(child);
      R_.pop_back();
      live[v / 64] &= ~(std::uint64_t(1) << (v % 64));
    }
  }

  const AdjacencyMatrix& adj_;
  std::size_t W_;
  int best_ = 0;
  std::vector<int> R_;
  std::vector<int> best_witness_;
};

}  // namespace

SolveResult max_clique(const AdjacencyMatrix& adj) {
  if (adj.nv == 0) return {0, {}};
  return CliqueSolver(adj).solve();
}

SolveResult max_independent_set(const AdjacencyMatrix& adj) {
  if (adj.nv == 0) return {0, {}};
  AdjacencyMatrix comp = adj.complement();
  return CliqueSolver(comp).solve();
}

bool is_clique(const GraphSpec& g, const std::vector<Subspace>& family) {
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      if (family[i] == family[j] || !adjacent(g, family[i], family[j])) return false;
  return true;
}

bool is_independent(const GraphSpec& g, const std::vector<Subspace>& family) {
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      if (family[i] == family[j] || adjacent(g, family[i], family[j])) return false;
  return true;
}

bool is_connected(const AdjacencyMatrix& adj) {
  if (adj.nv == 0) return true;
  std::vector<std::uint64_t> seen(adj.words, 0), frontier(adj.words, 0);
  seen[0] |= 1;
  frontier[0] |= 1;
  while (true) {
    std::vector<std::uint64_t> next(adj.words, 0);
    bool any = false;
    for (int v = 0; v < adj.nv; ++v) {
      if (!((frontier[v / 64] >> (v % 64)) & 1)) continue;
      for (std::size_t w = 0; w < adj.words; ++w) {
        std::uint64_t add = adj.row(v)[w] & ~seen[w];
        if (add) {
          next[w] |= add;
          seen[w] |= add;
          any = true;
        }
      }
    }
    if (!any) break;
    frontier = std::move(next);
  }
  return kern::popcount(seen.data(), adj.words) == static_cast<std::size_t>(adj.nv);
}

bool dual_isomorphism_check(const GraphSpec& g, std::uint64_t cap) {
  VertexSet v1 = materialize_vertices(g, cap);
  VertexSet v2 = materialize_vertices(GraphSpec(g.ring, g.n, g.n - g.m, g.r), cap);
  if (v1.list.size() != v2.list.size()) return false;

  std::vector<int> image(v1.list.size());
  std::vector<char> hit(v2.list.size(), 0);
  for (size_t i = 0; i < v1.list.size(); ++i) {
    int j = v2.find(dual(v1.list[i]));
    if (j < 0 || hit[j]) return false;
    hit[j] = 1;
    image[i] = j;
  }
  const int mr1 = g.m - g.r, mr2 = (g.n - g.m) - g.r;
  for (size_t i = 0; i < v1.list.size(); ++i)
    for (size_t j = i + 1; j < v1.list.size(); ++j) {
      bool a = dim_intersection(v1.list[i], v1.list[j]) > mr1;
      bool b = dim_intersection(v2.list[image[i]], v2.list[image[j]]) > mr2;
      if (a != b) return false;
    }
  return true;
}

}  // namespace grzh
