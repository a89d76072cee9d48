#pragma once
// Dense matrices over Z_h: products, the diagonal normal form with its unique
// exponent array, inner rank, McCoy rank (fast path and the definition-level
// minor/annihilator oracle), invertibility, right inverses, basis extension,
// and entrywise CRT maps.

#include <optional>
#include <vector>

#include "grzh/ring.hpp"

namespace grzh {

class Mat {
 public:
  Mat() = default;
  Mat(RingPtr ring, int rows, int cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw invalid_param_error("negative matrix shape");
  }
  static Mat identity(RingPtr ring, int n);
  static Mat from_rows(RingPtr ring, int rows, int cols, std::vector<zh_t> entries);

  const RingPtr& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  zh_t at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  zh_t& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<zh_t>& data() const { return a_; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ &&
           ring_->modulus() == o.ring_->modulus();
  }

  Mat transposed() const;
  Mat block(int r0, int c0, int nrows, int ncols) const;

  // in-place elementary operations (all reduce mod h)
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void scale_row(int i, zh_t u);
  void scale_col(int j, zh_t u);
  void add_row_multiple(int dst, int src, zh_t f);  // row dst += f * row src
  void add_col_multiple(int dst, int src, zh_t f);  // col dst += f * col src

  bool is_zero() const;

 private:
  RingPtr ring_;
  int rows_ = 0, cols_ = 0;
  std::vector<zh_t> a_;
};

Mat vstack(const Mat& top, const Mat& bottom);
Mat hstack(const Mat& left, const Mat& right);

// A = S * D(exponents) * T with D the m x n diagonal of prod_i p_i^{a_ic},
// exponents per prime nondecreasing down the diagonal; the exponent array is
// the unique one determined by A. S_inv and T_inv come out of the same
// elimination for free.
struct DiagonalNormalForm {
  Mat S, S_inv;   // rows x rows
  Mat T, T_inv;   // cols x cols
  std::vector<ExponentVec> exponents;  // min(rows, cols) entries

  zh_t diag_entry(const Ring& ring, int c) const;
  Mat diagonal(const RingPtr& ring, int rows, int cols) const;
};

DiagonalNormalForm normal_form(const Mat& A);

// Exponent array only (no transform accumulation); same values as
// normal_form(A).exponents but much cheaper.
std::vector<ExponentVec> normal_form_exponents(const Mat& A);

// Least r such that A factors as (m x r) * (r x n); 0 for the zero matrix.
int inner_rank(const Mat& A);

// Largest k whose k x k minor ideal has trivial annihilator.
int mccoy_rank(const Mat& A);

// Definition-level McCoy rank via enumeration of all k x k minors; serves as
// an independent oracle for mccoy_rank. Throws cap_exceeded_error if the
// number of minors of some order exceeds minor_cap.
int mccoy_rank_by_annihilator(const Mat& A, std::uint64_t minor_cap = 1000000);

zh_t det(const Mat& A);
bool is_invertible(const Mat& A);
Mat inverse(const Mat& A);

// B with A * B = I_m when rk(A) = m (m <= n); nullopt otherwise.
std::optional<Mat> right_inverse(const Mat& A);

bool linearly_independent(const Mat& rows);

// Invertible n x n matrix whose first m rows are the input rows.
Mat extend_to_basis(const Mat& rows);

// Entrywise projections / reconstruction.
Mat pi_mat(const Mat& A, int i);
Mat theta_mat(const Mat& A, int i);
Mat crt_lift_mat(const RingPtr& ring, const std::vector<Mat>& locals);

}  // namespace grzh
