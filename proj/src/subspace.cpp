#include "grzh/subspace.hpp"

#include <algorithm>
#include <numeric>

namespace grzh {

namespace {

// Reduced echelon form over a local ring: greedy leftmost pivot columns,
// Gauss-Jordan with unit pivots. Unique for a given row space.
Mat local_echelon(const Mat& A) {
  const Ring& R = *A.ring();
  if (R.t() != 1) throw internal_check_error("local_echelon needs a local ring");
  const zh_t p = R.factor(0).p;
  Mat M = A;
  const int m = M.rows(), n = M.cols();
  int k = 0;
  for (int j = 0; j < n && k < m; ++j) {
    int piv = -1;
    for (int i = k; i < m; ++i)
      if (M.at(i, j) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    M.swap_rows(k, piv);
    M.scale_row(k, R.inv(M.at(k, j)));
    for (int i = 0; i < m; ++i) {
      if (i == k) continue;
      zh_t f = M.at(i, j);
      if (f) M.add_row_multiple(i, k, R.neg(f));
    }
    ++k;
  }
  if (k < m)
    throw invalid_param_error("rows do not form a subspace basis (rank deficient)");
  return M;
}

bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Streaming generator of all canonical echelon matrices over a local ring:
// pivot sets in lex order, then an odometer over the free entries. Non-pivot
// columns carry arbitrary values above the pivot count and multiples of p
// below it.
class LocalCanonicalEnum {
 public:
  LocalCanonicalEnum(RingPtr local, int n, int m)
      : local_(std::move(local)), n_(n), m_(m) {
    reset();
  }

  void reset() {
    piv_.resize(m_);
    std::iota(piv_.begin(), piv_.end(), 0);
    setup_positions();
    exhausted_ = false;
  }

  Mat current() const {
    Mat M(local_, m_, n_);
    for (int c = 0; c < m_; ++c) M.at(c, piv_[c]) = local_->reduce(1);
    for (size_t t = 0; t < pos_.size(); ++t) M.at(pos_[t].i, pos_[t].j) = vals_[t];
    return M;
  }

  // Steps to the next canonical matrix; false once the stream wrapped around.
  bool advance() {
    const zh_t q = local_->factor(0).q;
    size_t t = pos_.size();
    bool carry = true;
    while (t > 0 && carry) {
      --t;
      vals_[t] += pos_[t].step;
      if (vals_[t] >= q)
        vals_[t] = 0;
      else
        carry = false;
    }
    if (!carry) return true;
    if (m_ > 0 && next_combination(piv_, n_)) {
      setup_positions();
      return true;
    }
    exhausted_ = true;
    return false;
  }

  bool exhausted() const { return exhausted_; }

 private:
  struct Pos {
    int i, j;
    zh_t step;
  };

  void setup_positions() {
    const zh_t p = local_->factor(0).p;
    pos_.clear();
    int seen = 0;
    for (int j = 0; j < n_; ++j) {
      if (seen < m_ && piv_[seen] == j) {
        ++seen;
        continue;
      }
      for (int i = 0; i < m_; ++i) pos_.push_back({i, j, i < seen ? 1 : p});
    }
    vals_.assign(pos_.size(), 0);
  }

  RingPtr local_;
  int n_, m_;
  std::vector<int> piv_;
  std::vector<Pos> pos_;
  std::vector<zh_t> vals_;
  bool exhausted_ = false;
};

struct AdaptedBasis {
  Mat T, T_inv;  // A = (0, I_m) T as subspaces
};

AdaptedBasis adapted_basis_full(const Mat& rep) {
  const int m = rep.rows(), n = rep.cols();
  DiagonalNormalForm nf = normal_form(rep);
  for (const auto& e : nf.exponents)
    if (!e.is_zero()) throw internal_check_error("subspace rep lost full rank");
  // rep = S (I_m | 0) T_A; moving the first m rows of T_A to the bottom gives
  // T with A = (0, I_m) T, and the matching column shuffle gives its inverse.
  AdaptedBasis ab{Mat(rep.ring(), n, n), Mat(rep.ring(), n, n)};
  for (int j = 0; j < n; ++j) {
    int src = j < n - m ? m + j : j - (n - m);
    for (int c = 0; c < n; ++c) ab.T.at(j, c) = nf.T.at(src, c);
    for (int r = 0; r < n; ++r) ab.T_inv.at(r, j) = nf.T_inv.at(r, src);
  }
  return ab;
}

}  // namespace

Subspace Subspace::from_matrix(const Mat& A) {
  const RingPtr& R = A.ring();
  if (A.rows() > A.cols())
    throw invalid_param_error("subspace basis has more rows than ambient dimension");
  if (R->t() == 1) return Subspace(local_echelon(A));
  std::vector<Mat> locals;
  locals.reserve(R->t());
  for (int i = 0; i < R->t(); ++i) locals.push_back(local_echelon(pi_mat(A, i)));
  return Subspace(crt_lift_mat(R, locals));
}

Subspace Subspace::zero(RingPtr ring, int n) { return Subspace(Mat(std::move(ring), 0, n)); }

Subspace Subspace::full(RingPtr ring, int n) {
  return Subspace(Mat::identity(std::move(ring), n));
}

bool Subspace::operator<(const Subspace& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  if (ambient() != o.ambient()) return ambient() < o.ambient();
  return rep_.data() < o.rep_.data();
}

// ----------------------------------------------------------------- counting

bigint gaussian_binomial(zh_t p, int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  bigint r = 1;
  const bigint bp = p;
  for (int j = 1; j <= k; ++j) {
    r *= boost::multiprecision::pow(bp, static_cast<unsigned>(n - k + j)) - 1;
    r /= boost::multiprecision::pow(bp, static_cast<unsigned>(j)) - 1;
  }
  return r;
}

bigint count_subspaces(const Ring& ring, int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw invalid_param_error("count_subspaces requires 0 <= k <= n");
  bigint r = 1;
  for (int i = 0; i < ring.t(); ++i) {
    const auto& pp = ring.factor(i);
    r *= boost::multiprecision::pow(bigint(pp.p),
                                    static_cast<unsigned>((pp.s - 1) * k * (n - k)));
    r *= gaussian_binomial(pp.p, n, k);
  }
  return r;
}

bigint count_inside(const Ring& ring, int k, int m) {
  if (k < 0 || m < 0 || m > k)
    throw invalid_param_error("count_inside requires 0 <= m <= k");
  bigint r = 1;
  for (int i = 0; i < ring.t(); ++i) {
    const auto& pp = ring.factor(i);
    r *= boost::multiprecision::pow(bigint(pp.p),
                                    static_cast<unsigned>((pp.s - 1) * m * (k - m)));
    r *= gaussian_binomial(pp.p, k, m);
  }
  return r;
}

bigint count_containing(const Ring& ring, int n, int k, int m) {
  if (m < 0 || m > k || k > n)
    throw invalid_param_error("count_containing requires 0 <= m <= k <= n");
  bigint r = 1;
  for (int i = 0; i < ring.t(); ++i) {
    const auto& pp = ring.factor(i);
    r *= boost::multiprecision::pow(
        bigint(pp.p), static_cast<unsigned>((pp.s - 1) * (k - m) * (n - k)));
    r *= gaussian_binomial(pp.p, n - m, k - m);
  }
  return r;
}

// -------------------------------------------------------------- enumeration

struct SubspaceEnumerator::Impl {
  RingPtr ring;
  std::vector<LocalCanonicalEnum> streams;
  bool done = false;

  std::optional<Subspace> next() {
    if (done) return std::nullopt;
    const int t = ring->t();
    Mat lifted = [&] {
      if (t == 1) return streams[0].current();
      std::vector<Mat> locals;
      locals.reserve(t);
      for (int i = 0; i < t; ++i) locals.push_back(streams[i].current());
      return crt_lift_mat(ring, locals);
    }();
    // odometer over the prime components, last varies fastest
    int i = t - 1;
    while (i >= 0) {
      if (streams[i].advance()) break;
      streams[i].reset();
      --i;
    }
    if (i < 0) done = true;
    return Subspace::from_matrix(lifted);
  }
};

SubspaceEnumerator::SubspaceEnumerator(RingPtr ring, int n, int m, std::uint64_t cap) {
  if (n < 0 || m < 0 || m > n)
    throw invalid_param_error("enumeration requires 0 <= m <= n");
  bigint total = count_subspaces(*ring, n, m);
  if (cap != kNoCap && total > cap)
    throw cap_exceeded_error("enumeration of " + total.str() +
                             " subspaces exceeds cap " + std::to_string(cap));
  total_ = total > kNoCap ? kNoCap : total.convert_to<std::uint64_t>();
  impl_ = std::make_unique<Impl>();
  impl_->ring = ring;
  for (int i = 0; i < ring->t(); ++i)
    impl_->streams.emplace_back(ring->local(i), n, m);
}

SubspaceEnumerator::~SubspaceEnumerator() = default;
SubspaceEnumerator::SubspaceEnumerator(SubspaceEnumerator&&) noexcept = default;
SubspaceEnumerator& SubspaceEnumerator::operator=(SubspaceEnumerator&&) noexcept = default;

std::optional<Subspace> SubspaceEnumerator::next() { return impl_->next(); }

std::vector<Subspace> all_subspaces(const RingPtr& ring, int n, int m,
                                    std::uint64_t cap) {
  SubspaceEnumerator en(ring, n, m, cap);
  std::vector<Subspace> out;
  out.reserve(en.total());
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

// ------------------------------------------------------- lattice operations

int dim_join(const Subspace& A, const Subspace& B) {
  check_same_ring(*A.ring(), *B.ring());
  if (A.ambient() != B.ambient())
    throw invalid_param_error("subspaces live in different ambient spaces");
  return inner_rank(vstack(A.rep(), B.rep()));
}

int dim_intersection(const Subspace& A, const Subspace& B) {
  return A.dim() + B.dim() - dim_join(A, B);
}

bool contains(const Subspace& A, const Subspace& B) {
  return dim_intersection(A, B) == B.dim();
}

int subspace_distance(const Subspace& A, const Subspace& B) {
  return A.dim() + B.dim() - 2 * dim_intersection(A, B);
}

Mat adapted_basis(const Subspace& A) { return adapted_basis_full(A.rep()).T; }

Subspace dual(const Subspace& A) {
  const RingPtr& R = A.ring();
  const int m = A.dim(), n = A.ambient();
  if (m == 0) return Subspace::full(R, n);
  if (m == n) return Subspace::zero(R, n);
  AdaptedBasis ab = adapted_basis_full(A.rep());
  // A = (0, I_m) T  =>  A_perp = (I_{n-m}, 0) (T^-1)^t, i.e. the transposed
  // first n-m columns of T^-1.
  Mat d = ab.T_inv.block(0, 0, n, n - m).transposed();
  if (!(A.rep() * d.transposed()).is_zero())
    throw internal_check_error("dual: orthogonality failed");
  return Subspace::from_matrix(d);
}

// ---------------------------------------------------- two-subspace normal form

namespace {

struct LocalPairNF {
  Mat T;
  int r = 0;
  std::vector<int> exps;
};

// Bc and T move together so that Bc * T stays fixed and (0, I_k) T keeps
// representing A: column operations on Bc are paired with inverse row
// operations on T, and only block-upper-triangular column transforms (with
// respect to the n-k | k split) are used.
struct PairWorker {
  const Ring& R;
  Mat Bc, T;
  int n, k, m;

  void col_swap(int a, int b) {
    if (a == b) return;
    Bc.swap_cols(a, b);
    T.swap_rows(a, b);
  }
  void col_scale(int j, zh_t u) {
    Bc.scale_col(j, u);
    T.scale_row(j, R.inv(u));
  }
  void col_add(int dst, int src, zh_t f) {  // Bc col dst += f * col src
    Bc.add_col_multiple(dst, src, f);
    T.add_row_multiple(src, dst, R.neg(f));
  }
  void cols_mul(int c0, const Mat& W, const Mat& W_inv) {
    // Bc[:, c0..c0+w) *= W ; T rows likewise by W^-1 on the left
    const int w = W.rows();
    Mat blk = Bc.block(0, c0, m, w) * W;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < w; ++j) Bc.at(i, c0 + j) = blk.at(i, j);
    Mat rows = W_inv * T.block(c0, 0, w, n);
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < n; ++j) T.at(c0 + i, j) = rows.at(i, j);
  }
  void col_permute(int c0, const std::vector<int>& perm) {
    // new col (c0+j) of Bc = old col (c0+perm[j]); rows of T follow suit
    const int w = static_cast<int>(perm.size());
    Mat nb = Bc, nt = T;
    for (int j = 0; j < w; ++j) {
      for (int i = 0; i < m; ++i) nb.at(i, c0 + j) = Bc.at(i, c0 + perm[j]);
      for (int c = 0; c < n; ++c) nt.at(c0 + j, c) = T.at(c0 + perm[j], c);
    }
    Bc = std::move(nb);
    T = std::move(nt);
  }
  void rows_mul(int r0, const Mat& W) {  // Bc rows [r0, r0+w) left-multiplied
    const int w = W.rows();
    Mat blk = W * Bc.block(r0, 0, w, n);
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < n; ++j) Bc.at(r0 + i, j) = blk.at(i, j);
  }
};

LocalPairNF local_pair_nf(const Mat& Arep, const Mat& Brep) {
  const RingPtr& Rp = Arep.ring();
  const Ring& R = *Rp;
  const zh_t p = R.factor(0).p;
  const int s = R.factor(0).s;
  const int n = Arep.cols(), k = Arep.rows(), m = Brep.rows();

  AdaptedBasis ab = adapted_basis_full(Arep);  // A = (0, I_k) T
  PairWorker w{R, Brep * ab.T_inv, ab.T, n, k, m};

  // left block to diagonal form
  DiagonalNormalForm nf1 = normal_form(w.Bc.block(0, 0, m, n - k));
  int r = 0;
  std::vector<int> exps;
  for (const auto& e : nf1.exponents)
    if (e.a[0] < s) {
      ++r;
      exps.push_back(e.a[0]);
    }
  w.rows_mul(0, nf1.S_inv);
  w.cols_mul(0, nf1.T_inv, nf1.T);
  // now Bc = (D1 | C) with D1 = diag(p^{a_c}) padded by zeros

  const int d = m - r;
  if (d > 0) {
    // bottom rows lie in A; bring their right block to (I_d, 0)
    DiagonalNormalForm nfb = normal_form(w.Bc.block(r, n - k, d, k));
    for (const auto& e : nfb.exponents)
      if (!e.is_zero())
        throw internal_check_error("pair normal form: intersection rows not unimodular");
    w.rows_mul(r, nfb.S_inv);
    w.cols_mul(n - k, nfb.T_inv, nfb.T);
    // clear the same columns in the top rows
    for (int c = 0; c < r; ++c)
      for (int j = 0; j < d; ++j) {
        zh_t f = w.Bc.at(c, n - k + j);
        if (f) w.Bc.add_row_multiple(c, r + j, R.neg(f));
      }
  }
  // move the I_d block to the tail: [F | I_d] -> [F' | I_d] at fixed positions
  {
    std::vector<int> perm(k);
    for (int j = 0; j < k - d; ++j) perm[j] = d + j;
    for (int j = 0; j < d; ++j) perm[k - d + j] = j;
    w.col_permute(n - k, perm);
  }

  // top rows: (p^{a_c} e_c | F_c | 0); steer each F_c to the unit vector at
  // its target column n-m+c, working upward so already-placed rows keep their
  // cleared columns
  for (int c = r - 1; c >= 0; --c) {
    const int tc = n - m + c;
    const int f_lo = n - k, f_hi = n - d;
    const int a_c = exps[c];
    if (a_c == 0) {
      // the diagonal entry is a unit, so column c can absorb anything mod 1
      for (int j = f_lo; j < f_hi; ++j) {
        zh_t want = (j == tc) ? R.reduce(1) : 0;
        zh_t cur = w.Bc.at(c, j);
        if (cur != want) w.col_add(j, c, R.sub(want, cur));
      }
    } else {
      int src = -1;
      if (R.is_unit(w.Bc.at(c, tc))) src = tc;
      for (int j = f_lo; src < 0 && j < f_hi; ++j)
        if (R.is_unit(w.Bc.at(c, j))) src = j;
      if (src < 0)
        throw internal_check_error("pair normal form: no unit available in row");
      w.col_swap(src, tc);
      w.col_scale(tc, R.inv(w.Bc.at(c, tc)));
      for (int j = f_lo; j < f_hi; ++j) {
        if (j == tc) continue;
        zh_t f = w.Bc.at(c, j);
        if (f) w.col_add(j, tc, R.neg(f));
      }
    }
    // clear this target column in the rows above; the diagonal pollution
    // divides out because exponents are nondecreasing
    for (int c2 = 0; c2 < c; ++c2) {
      zh_t f = w.Bc.at(c2, tc);
      if (!f) continue;
      w.Bc.add_row_multiple(c2, c, R.neg(f));
      zh_t mu = f;
      for (int e = exps[c2]; e < a_c; ++e) mu = R.mul(mu, p);
      w.col_add(c, c2, mu);
    }
  }

  // sanity: Bc must now match the (D, I_m) pattern exactly
  Mat expect(Rp, m, n);
  for (int c = 0; c < r; ++c) {
    expect.at(c, c) = R.pow(p, exps[c]);
    expect.at(c, n - m + c) = R.reduce(1);
  }
  for (int j = 0; j < d; ++j) expect.at(r + j, n - d + j) = R.reduce(1);
  if (!(w.Bc == expect))
    throw internal_check_error("pair normal form: reduction did not reach target");

  return {std::move(w.T), r, std::move(exps)};
}

}  // namespace

Mat PairNormalForm::d_block(const RingPtr& ring, int m, int n) const {
  Mat D(ring, m, n - m);
  for (int c = 0; c < r; ++c) D.at(c, c) = ring->ideal_generator(exponents[c]);
  return D;
}

PairNormalForm pair_normal_form(const Subspace& A, const Subspace& B) {
  check_same_ring(*A.ring(), *B.ring());
  const RingPtr& R = A.ring();
  const int n = A.ambient(), k = A.dim(), m = B.dim();
  if (B.ambient() != n) throw invalid_param_error("ambient dimensions differ");
  if (!(1 <= m && m <= k && k < n))
    throw invalid_param_error("pair normal form requires 1 <= dim B <= dim A < n");
  if (contains(A, B))
    throw invalid_param_error("pair normal form requires B not contained in A");

  const int t = R->t();
  std::vector<LocalPairNF> loc;
  loc.reserve(t);
  for (int i = 0; i < t; ++i)
    loc.push_back(local_pair_nf(pi_mat(A.rep(), i), pi_mat(B.rep(), i)));

  PairNormalForm out;
  out.r = 0;
  for (const auto& l : loc) out.r = std::max(out.r, l.r);
  if (out.r == 0) throw internal_check_error("pair normal form: r = 0 for B not in A");

  out.exponents.resize(out.r);
  for (int c = 0; c < out.r; ++c) {
    out.exponents[c].a.resize(t);
    for (int i = 0; i < t; ++i)
      out.exponents[c].a[i] = c < loc[i].r ? loc[i].exps[c] : R->factor(i).s;
  }

  if (t == 1) {
    out.T = std::move(loc[0].T);
  } else {
    std::vector<Mat> parts;
    parts.reserve(t);
    for (auto& l : loc) parts.push_back(std::move(l.T));
    out.T = crt_lift_mat(R, parts);
    // fold the cross-prime units into T so the diagonal is prod_i p_i^{a_ic}
    for (int c = 0; c < out.r; ++c) {
      std::vector<zh_t> res(t);
      for (int i = 0; i < t; ++i) {
        zh_t v = 1;
        for (int j = 0; j < t; ++j) {
          if (j == i) continue;
          for (int e = 0; e < out.exponents[c].a[j]; ++e)
            v = (v * R->factor(j).p) % R->factor(i).q;
        }
        res[i] = v;
      }
      zh_t u = R->crt_lift(res);
      if (u != 1) out.T.scale_row(c, R->inv(u));
    }
  }

  // reconstruction check against the originals
  Subspace a_back = Subspace::from_matrix(out.T.block(n - k, 0, k, n));
  Mat b_mat = hstack(out.d_block(R, m, n), Mat::identity(R, m)) * out.T;
  Subspace b_back = Subspace::from_matrix(b_mat);
  if (!(a_back == A) || !(b_back == B) ||
      out.r != m - dim_intersection(A, B))
    throw internal_check_error("pair normal form: reconstruction failed");
  return out;
}

// ------------------------------------------------- derived enumeration helpers

std::vector<Subspace> subspaces_containing(const Subspace& P, int m,
                                           std::uint64_t cap) {
  const RingPtr& R = P.ring();
  const int q = P.dim(), n = P.ambient();
  if (m < q || m > n)
    throw invalid_param_error("subspaces_containing requires dim P <= m <= n");
  if (q == 0) return all_subspaces(R, n, m, cap);
  Mat T = adapted_basis(P);
  std::vector<Subspace> out;
  SubspaceEnumerator en(R, n - q, m - q, cap);
  out.reserve(en.total());
  while (auto x = en.next()) {
    Mat top = hstack(x->rep(), Mat(R, m - q, q));
    Mat bottom = hstack(Mat(R, q, n - q), Mat::identity(R, q));
    out.push_back(Subspace::from_matrix(vstack(top, bottom) * T));
  }
  return out;
}

std::vector<Subspace> subspaces_inside(const Subspace& Q, int m,
                                       std::uint64_t cap) {
  const RingPtr& R = Q.ring();
  const int w = Q.dim();
  if (m < 0 || m > w)
    throw invalid_param_error("subspaces_inside requires 0 <= m <= dim Q");
  std::vector<Subspace> out;
  SubspaceEnumerator en(R, w, m, cap);
  out.reserve(en.total());
  while (auto x = en.next()) out.push_back(Subspace::from_matrix(x->rep() * Q.rep()));
  return out;
}

}  // namespace grzh
