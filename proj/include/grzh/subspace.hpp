#pragma once
// m-subspaces of Z_h^n (free rank-m summands with unimodular bases) in a
// deterministic canonical representation, plus enumeration, the counting
// formulas, intersection/join dimensions, duals, subspace distance, and the
// two-subspace normal form.
//
// Canonical form: a subspace is determined by its projections onto the local
// rings Z_{p_i^{s_i}}; each projection has a unique reduced echelon basis
// (greedy leftmost pivot columns, which exist over a local ring because every
// unimodular row has a unit entry), and the canonical representation is the
// CRT lift of those echelon bases. Over a ring with two or more prime factors
// no echelon form with a literal identity submatrix exists in general — e.g.
// (3,4) over Z_12 is unimodular with no unit entry — so the per-prime form is
// the right generalization. Two Subspace values are equal iff their canonical
// representations are identical.

#include <compare>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "grzh/matrix.hpp"

namespace grzh {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

class Subspace {
 public:
  // Canonicalizes the row space of A; throws invalid_param_error unless
  // rk(A) equals the number of rows.
  static Subspace from_matrix(const Mat& A);
  static Subspace zero(RingPtr ring, int n);
  static Subspace full(RingPtr ring, int n);

  const Mat& rep() const { return rep_; }
  const RingPtr& ring() const { return rep_.ring(); }
  int dim() const { return rep_.rows(); }
  int ambient() const { return rep_.cols(); }

  bool operator==(const Subspace& o) const { return rep_ == o.rep_; }
  // ordering for use in std::set / deterministic sorting
  bool operator<(const Subspace& o) const;

 private:
  explicit Subspace(Mat rep) : rep_(std::move(rep)) {}
  Mat rep_;
};

// ---------------------------------------------------------------- counting
bigint gaussian_binomial(zh_t p, int n, int k);

// Number of k-subspaces of Z_h^n.
bigint count_subspaces(const Ring& ring, int n, int k);
// Number of m-subspaces inside a fixed k-subspace.
bigint count_inside(const Ring& ring, int k, int m);
// Number of k-subspaces of Z_h^n containing a fixed m-subspace.
bigint count_containing(const Ring& ring, int n, int k, int m);

// -------------------------------------------------------------- enumeration
// Deterministic stream over all m-subspaces of Z_h^n, one prime-component
// odometer step at a time (the last prime varies fastest). Throws
// cap_exceeded_error up front when the total count exceeds cap; pass
// kNoCap to stream without the guard (total() then saturates).
inline constexpr std::uint64_t kNoCap = ~std::uint64_t(0);

class SubspaceEnumerator {
 public:
  SubspaceEnumerator(RingPtr ring, int n, int m, std::uint64_t cap);
  ~SubspaceEnumerator();
  SubspaceEnumerator(SubspaceEnumerator&&) noexcept;
  SubspaceEnumerator& operator=(SubspaceEnumerator&&) noexcept;

  std::optional<Subspace> next();
  std::uint64_t total() const { return total_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::uint64_t total_ = 0;
};

std::vector<Subspace> all_subspaces(const RingPtr& ring, int n, int m,
                                    std::uint64_t cap);

// ------------------------------------------------------- lattice operations
int dim_join(const Subspace& A, const Subspace& B);
int dim_intersection(const Subspace& A, const Subspace& B);
bool contains(const Subspace& A, const Subspace& B);  // B subseteq A
int subspace_distance(const Subspace& A, const Subspace& B);
Subspace dual(const Subspace& A);

// A = (0, I_k) T and B = (D, I_m) T with D the m x (n-m) block carrying
// diag(prod_i p_i^{a_ic}) for c < r and zeros elsewhere; r = m - dim(A cap B)
// and the exponent array is per-prime nondecreasing.
struct PairNormalForm {
  Mat T;
  int r = 0;
  std::vector<ExponentVec> exponents;  // r entries

  Mat d_block(const RingPtr& ring, int m, int n) const;
};

// Requires 1 <= dim(B) <= dim(A) < n and B not contained in A.
PairNormalForm pair_normal_form(const Subspace& A, const Subspace& B);

// All m-subspaces containing P / contained in Q, in deterministic order.
std::vector<Subspace> subspaces_containing(const Subspace& P, int m,
                                           std::uint64_t cap);
std::vector<Subspace> subspaces_inside(const Subspace& Q, int m,
                                       std::uint64_t cap);

// T with A = (0, I_m) T as subspaces (rows m..n-1 of T are a basis of A).
Mat adapted_basis(const Subspace& A);

}  // namespace grzh
