#include "grzh/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace grzh {

Mat Mat::identity(RingPtr ring, int n) {
  Mat m(std::move(ring), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = m.ring_->reduce(1);
  return m;
}

Mat Mat::from_rows(RingPtr ring, int rows, int cols, std::vector<zh_t> entries) {
  if (entries.size() != static_cast<size_t>(rows) * cols)
    throw invalid_param_error("entry count does not match matrix shape");
  Mat m(std::move(ring), rows, cols);
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0 || entries[i] >= m.ring_->modulus())
      throw invalid_param_error("matrix entry out of range [0, h)");
    m.a_[i] = entries[i];
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  check_same_ring(*ring_, *o.ring_);
  if (cols_ != o.rows_) throw invalid_param_error("matrix product shape mismatch");
  Mat r(ring_, rows_, o.cols_);
  const zh_t h = ring_->modulus();
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < cols_; ++k)
        acc += static_cast<__int128>(at(i, k)) * o.at(k, j);
      r.at(i, j) = static_cast<zh_t>(acc % h);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  check_same_ring(*ring_, *o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw invalid_param_error("matrix sum shape mismatch");
  Mat r(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_->add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_same_ring(*ring_, *o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw invalid_param_error("matrix difference shape mismatch");
  Mat r(ring_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_->sub(a_[i], o.a_[i]);
  return r;
}

Mat Mat::transposed() const {
  Mat r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::block(int r0, int c0, int nrows, int ncols) const {
  if (r0 < 0 || c0 < 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
    throw invalid_param_error("block out of range");
  Mat r(ring_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

void Mat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}
void Mat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}
void Mat::scale_row(int i, zh_t u) {
  for (int c = 0; c < cols_; ++c) at(i, c) = ring_->mul(at(i, c), u);
}
void Mat::scale_col(int j, zh_t u) {
  for (int r = 0; r < rows_; ++r) at(r, j) = ring_->mul(at(r, j), u);
}
void Mat::add_row_multiple(int dst, int src, zh_t f) {
  for (int c = 0; c < cols_; ++c)
    at(dst, c) = ring_->add(at(dst, c), ring_->mul(f, at(src, c)));
}
void Mat::add_col_multiple(int dst, int src, zh_t f) {
  for (int r = 0; r < rows_; ++r)
    at(r, dst) = ring_->add(at(r, dst), ring_->mul(f, at(r, src)));
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](zh_t v) { return v == 0; });
}

Mat vstack(const Mat& top, const Mat& bottom) {
  check_same_ring(*top.ring(), *bottom.ring());
  if (top.cols() != bottom.cols()) throw invalid_param_error("vstack width mismatch");
  Mat r(top.ring(), top.rows() + bottom.rows(), top.cols());
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) r.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) r.at(top.rows() + i, j) = bottom.at(i, j);
  return r;
}

Mat hstack(const Mat& left, const Mat& right) {
  check_same_ring(*left.ring(), *right.ring());
  if (left.rows() != right.rows()) throw invalid_param_error("hstack height mismatch");
  Mat r(left.ring(), left.rows(), left.cols() + right.cols());
  for (int i = 0; i < left.rows(); ++i) {
    for (int j = 0; j < left.cols(); ++j) r.at(i, j) = left.at(i, j);
    for (int j = 0; j < right.cols(); ++j) r.at(i, left.cols() + j) = right.at(i, j);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Local elimination over Z_{p^s}: pivot on the entry of least p-adic
// valuation, clear its row and column; the quotient ring makes every division
// by the pivot's p-power exact, so one sweep per pivot suffices and the
// resulting exponents come out nondecreasing.
namespace {

struct LocalSmith {
  Mat M;                    // reduced to the diagonal form
  Mat S, S_inv, T, T_inv;   // A = S * M * T when transforms are tracked
  std::vector<int> exps;    // min(m,n) values in [0, s]
  zh_t det_st = 1;          // det(S) * det(T)
};

class SmithWorker {
 public:
  SmithWorker(const Mat& A, bool want_transforms)
      : R_(*A.ring()), p_(R_.factor(0).p), s_(R_.factor(0).s),
        want_(want_transforms), out_{A, {}, {}, {}, {}, {}, R_.reduce(1)} {
    if (R_.t() != 1) throw internal_check_error("local smith needs a local ring");
    if (want_) {
      out_.S = Mat::identity(A.ring(), A.rows());
      out_.S_inv = out_.S;
      out_.T = Mat::identity(A.ring(), A.cols());
      out_.T_inv = out_.T;
    }
  }

  LocalSmith run() {
    Mat& M = out_.M;
    const int m = M.rows(), n = M.cols(), d = std::min(m, n);
    out_.exps.assign(d, s_);
    for (int c = 0; c < d; ++c) {
      int bi = -1, bj = -1, bv = s_;
      for (int i = c; i < m; ++i)
        for (int j = c; j < n; ++j) {
          int v = val(M.at(i, j));
          if (v < bv) {
            bv = v;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) break;  // all remaining entries are zero
      row_swap(c, bi);
      col_swap(c, bj);
      zh_t pw = 1;
      for (int k = 0; k < bv; ++k) pw *= p_;
      row_scale(c, R_.inv(M.at(c, c) / pw));  // pivot becomes p^bv
      for (int i = c + 1; i < m; ++i)
        if (M.at(i, c) != 0) row_add(i, c, R_.neg(M.at(i, c) / pw));
      for (int j = c + 1; j < n; ++j)
        if (M.at(c, j) != 0) col_add(j, c, R_.neg(M.at(c, j) / pw));
      out_.exps[c] = bv;
    }
    return std::move(out_);
  }

 private:
  int val(zh_t x) const {
    if (x == 0) return s_;
    int v = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    return v;
  }

  void row_swap(int i, int j) {
    if (i == j) return;
    out_.M.swap_rows(i, j);
    out_.det_st = R_.neg(out_.det_st);
    if (want_) {
      out_.S.swap_cols(i, j);
      out_.S_inv.swap_rows(i, j);
    }
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    out_.M.swap_cols(i, j);
    out_.det_st = R_.neg(out_.det_st);
    if (want_) {
      out_.T.swap_rows(i, j);
      out_.T_inv.swap_cols(i, j);
    }
  }
  void row_scale(int i, zh_t u) {
    if (u == 1) return;
    out_.M.scale_row(i, u);
    zh_t ui = R_.inv(u);
    out_.det_st = R_.mul(out_.det_st, ui);
    if (want_) {
      out_.S.scale_col(i, ui);
      out_.S_inv.scale_row(i, u);
    }
  }
  void row_add(int dst, int src, zh_t f) {  // row dst += f * row src
    out_.M.add_row_multiple(dst, src, f);
    if (want_) {
      out_.S.add_col_multiple(src, dst, R_.neg(f));
      out_.S_inv.add_row_multiple(dst, src, f);
    }
  }
  void col_add(int dst, int src, zh_t f) {  // col dst += f * col src
    out_.M.add_col_multiple(dst, src, f);
    if (want_) {
      out_.T.add_row_multiple(src, dst, R_.neg(f));
      out_.T_inv.add_col_multiple(dst, src, f);
    }
  }

  const Ring& R_;
  zh_t p_;
  int s_;
  bool want_;
  LocalSmith out_;
};

}  // namespace

zh_t DiagonalNormalForm::diag_entry(const Ring& ring, int c) const {
  zh_t v = 1;
  for (int i = 0; i < ring.t(); ++i)
    for (int k = 0; k < exponents.at(c).a.at(i); ++k) v = (v * ring.factor(i).p) % ring.modulus();
  return ring.reduce(v);
}

Mat DiagonalNormalForm::diagonal(const RingPtr& ring, int rows, int cols) const {
  Mat D(ring, rows, cols);
  for (size_t c = 0; c < exponents.size(); ++c)
    D.at(static_cast<int>(c), static_cast<int>(c)) = diag_entry(*ring, static_cast<int>(c));
  return D;
}

DiagonalNormalForm normal_form(const Mat& A) {
  const RingPtr& R = A.ring();
  const int t = R->t();
  const int d = std::min(A.rows(), A.cols());

  std::vector<LocalSmith> locals;
  locals.reserve(t);
  for (int i = 0; i < t; ++i)
    locals.push_back(SmithWorker(pi_mat(A, i), true).run());

  DiagonalNormalForm nf;
  nf.exponents.resize(d);
  for (int c = 0; c < d; ++c) {
    nf.exponents[c].a.resize(t);
    for (int i = 0; i < t; ++i) nf.exponents[c].a[i] = locals[i].exps[c];
  }

  auto lift = [&](auto member) {
    std::vector<Mat> parts;
    parts.reserve(t);
    for (int i = 0; i < t; ++i) parts.push_back(locals[i].*member);
    return crt_lift_mat(R, parts);
  };
  nf.S = lift(&LocalSmith::S);
  nf.S_inv = lift(&LocalSmith::S_inv);
  nf.T = lift(&LocalSmith::T);
  nf.T_inv = lift(&LocalSmith::T_inv);

  // The lifted diagonal entry agrees with prod_i p_i^{a_ic} only up to the
  // unit whose local images are prod_{j != i} p_j^{a_jc}; fold that unit's
  // inverse into T (and its inverse into T_inv) so S * D * T = A holds with
  // the canonical diagonal.
  if (t > 1) {
    for (int c = 0; c < d; ++c) {
      std::vector<zh_t> res(t);
      for (int i = 0; i < t; ++i) {
        zh_t v = 1;
        for (int j = 0; j < t; ++j) {
          if (j == i) continue;
          for (int k = 0; k < nf.exponents[c].a[j]; ++k)
            v = (v * R->factor(j).p) % R->factor(i).q;
        }
        res[i] = v;
      }
      zh_t u = R->crt_lift(res);
      if (u != 1) {
        nf.T.scale_row(c, R->inv(u));
        nf.T_inv.scale_col(c, u);
      }
    }
  }

  if (!(nf.S * nf.diagonal(R, A.rows(), A.cols()) * nf.T == A))
    throw internal_check_error("normal_form: S*D*T reconstruction failed");
  return nf;
}

std::vector<ExponentVec> normal_form_exponents(const Mat& A) {
  const RingPtr& R = A.ring();
  const int t = R->t();
  const int d = std::min(A.rows(), A.cols());
  std::vector<ExponentVec> out(d);
  for (int c = 0; c < d; ++c) out[c].a.resize(t);
  for (int i = 0; i < t; ++i) {
    LocalSmith ls = SmithWorker(pi_mat(A, i), false).run();
    for (int c = 0; c < d; ++c) out[c].a[i] = ls.exps[c];
  }
  return out;
}

int inner_rank(const Mat& A) {
  auto exps = normal_form_exponents(A);
  const Ring& R = *A.ring();
  int rho = 0;
  for (size_t c = 0; c < exps.size(); ++c) {
    bool all_full = true;
    for (int i = 0; i < R.t(); ++i)
      if (exps[c].a[i] != R.factor(i).s) all_full = false;
    if (!all_full) rho = static_cast<int>(c) + 1;
  }
  return rho;
}

int mccoy_rank(const Mat& A) {
  auto exps = normal_form_exponents(A);
  int rk = 0;
  for (size_t c = 0; c < exps.size(); ++c)
    if (exps[c].is_zero()) rk = static_cast<int>(c) + 1;
  return rk;
}

namespace {

// Determinant of the submatrix picked by (ri, ci) via cofactor expansion;
// only used by the minor oracle, where k stays tiny.
zh_t cofactor_det(const Mat& A, const std::vector<int>& ri, std::vector<int>& ci) {
  const Ring& R = *A.ring();
  size_t k = ri.size();
  if (k == 0) return R.reduce(1);
  if (k == 1) return A.at(ri[0], ci[0]);
  zh_t acc = 0;
  for (size_t j = 0; j < k; ++j) {
    zh_t a = A.at(ri[0], ci[j]);
    if (a == 0) continue;
    std::vector<int> sub_r(ri.begin() + 1, ri.end());
    std::vector<int> sub_c;
    for (size_t l = 0; l < k; ++l)
      if (l != j) sub_c.push_back(ci[l]);
    zh_t minor = cofactor_det(A, sub_r, sub_c);
    zh_t term = R.mul(a, minor);
    acc = (j % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return acc;
}

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (__int128(1) << 62)) return std::uint64_t(1) << 62;
  }
  return static_cast<std::uint64_t>(r);
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

}  // namespace

int mccoy_rank_by_annihilator(const Mat& A, std::uint64_t minor_cap) {
  const Ring& R = *A.ring();
  const int d = std::min(A.rows(), A.cols());
  int rk = 0;
  for (int k = 1; k <= d; ++k) {
    std::uint64_t count = binom_u64(A.rows(), k) * binom_u64(A.cols(), k);
    if (count > minor_cap)
      throw cap_exceeded_error("minor enumeration exceeds oracle cap");
    // Ann(I_k) = (0) iff gcd(h, all k x k minors) = 1.
    zh_t g = R.modulus();
    std::vector<int> ri(k), ci0(k);
    std::iota(ri.begin(), ri.end(), 0);
    bool trivial_ann = false;
    do {
      std::iota(ci0.begin(), ci0.end(), 0);
      do {
        std::vector<int> ci = ci0;
        g = std::gcd(g, cofactor_det(A, ri, ci));
        if (g == 1) {
          trivial_ann = true;
          break;
        }
      } while (next_combination(ci0, A.cols()));
      if (trivial_ann) break;
    } while (next_combination(ri, A.rows()));
    if (!trivial_ann) break;
    rk = k;
  }
  return rk;
}

zh_t det(const Mat& A) {
  if (A.rows() != A.cols()) throw invalid_param_error("determinant needs a square matrix");
  const RingPtr& R = A.ring();
  const int n = A.rows();
  if (n == 0) return R->reduce(1);
  std::vector<zh_t> local_dets(R->t());
  for (int i = 0; i < R->t(); ++i) {
    LocalSmith ls = SmithWorker(pi_mat(A, i), false).run();
    const Ring& L = *ls.M.ring();
    zh_t dd = L.reduce(1);
    for (int c = 0; c < n; ++c) dd = L.mul(dd, ls.M.at(c, c));
    // A = S * M * T, so det(A) = det_st * det(M)
    local_dets[i] = L.mul(ls.det_st, dd);
  }
  return R->crt_lift(local_dets);
}

bool is_invertible(const Mat& A) {
  if (A.rows() != A.cols()) throw invalid_param_error("invertibility needs a square matrix");
  return A.ring()->is_unit(det(A));
}

Mat inverse(const Mat& A) {
  if (A.rows() != A.cols()) throw invalid_param_error("inverse needs a square matrix");
  DiagonalNormalForm nf = normal_form(A);
  for (const auto& e : nf.exponents)
    if (!e.is_zero()) throw invalid_param_error("matrix is not invertible");
  Mat inv = nf.T_inv * nf.S_inv;
  if (!(A * inv == Mat::identity(A.ring(), A.rows())))
    throw internal_check_error("inverse: A * A^-1 != I");
  return inv;
}

std::optional<Mat> right_inverse(const Mat& A) {
  const int m = A.rows(), n = A.cols();
  if (m > n) throw invalid_param_error("right inverse needs rows <= cols");
  if (m == 0) return Mat(A.ring(), n, 0);
  DiagonalNormalForm nf = normal_form(A);
  for (const auto& e : nf.exponents)
    if (!e.is_zero()) return std::nullopt;
  // A = S (I_m | 0) T, so T^-1 (I_m ; 0) S^-1 is a right inverse.
  Mat B = nf.T_inv.block(0, 0, n, m) * nf.S_inv;
  if (!(A * B == Mat::identity(A.ring(), m)))
    throw internal_check_error("right_inverse: A * B != I");
  return B;
}

bool linearly_independent(const Mat& rows) {
  return mccoy_rank(rows) == rows.rows();
}

Mat extend_to_basis(const Mat& rows) {
  const int m = rows.rows(), n = rows.cols();
  if (m > n) throw invalid_param_error("cannot extend more than n rows");
  if (!linearly_independent(rows))
    throw invalid_param_error("rows are not linearly independent");
  DiagonalNormalForm nf = normal_form(rows);
  Mat full = m == 0 ? nf.T : vstack(rows, nf.T.block(m, 0, n - m, n));
  if (!is_invertible(full))
    throw internal_check_error("extend_to_basis: completion is singular");
  return full;
}

Mat pi_mat(const Mat& A, int i) {
  RingPtr local = A.ring()->local(i);
  Mat r(local, A.rows(), A.cols());
  for (int a = 0; a < A.rows(); ++a)
    for (int b = 0; b < A.cols(); ++b) r.at(a, b) = A.ring()->pi(A.at(a, b), i);
  return r;
}

Mat theta_mat(const Mat& A, int i) {
  if (A.ring()->t() < 2)
    throw invalid_param_error("theta projection needs at least two prime factors");
  RingPtr comp = Ring::make(A.ring()->theta_modulus(i));
  Mat r(comp, A.rows(), A.cols());
  for (int a = 0; a < A.rows(); ++a)
    for (int b = 0; b < A.cols(); ++b) r.at(a, b) = A.ring()->theta(A.at(a, b), i);
  return r;
}

Mat crt_lift_mat(const RingPtr& ring, const std::vector<Mat>& locals) {
  if (static_cast<int>(locals.size()) != ring->t())
    throw invalid_param_error("crt_lift_mat: need one local matrix per prime");
  const int m = locals.at(0).rows(), n = locals.at(0).cols();
  for (int i = 0; i < ring->t(); ++i) {
    if (locals[i].rows() != m || locals[i].cols() != n)
      throw invalid_param_error("crt_lift_mat: local shapes differ");
    if (locals[i].ring()->modulus() != ring->factor(i).q)
      throw invalid_param_error("crt_lift_mat: local modulus mismatch");
  }
  Mat r(ring, m, n);
  std::vector<zh_t> res(ring->t());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < ring->t(); ++i) res[i] = locals[i].at(a, b);
      r.at(a, b) = ring->crt_lift(res);
    }
  return r;
}

}  // namespace grzh
