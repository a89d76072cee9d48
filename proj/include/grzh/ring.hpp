#pragma once
// Exact arithmetic in Z_h for composite h, with the prime-power factorization,
// unit group tests, ideal membership, and the CRT projection/reconstruction
// maps onto the local rings Z_{p^s}.
//
// Elements are canonical residues in [0, h) stored as int64_t; all containers
// carry a shared Ring that supplies the modulus. h is capped at 2^40 so that
// products fit comfortably in 128-bit intermediates.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace grzh {

using zh_t = std::int64_t;

// Error taxonomy shared across the library; the CLI maps these onto exit codes.
struct invalid_param_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct cap_exceeded_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_check_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct PrimePower {
  zh_t p;    // prime
  int s;     // exponent >= 1
  zh_t q;    // p^s
};

// Exponent tuple (a_1,...,a_t) with 0 <= a_i <= s_i, indexing the ideal
// generated by prod p_i^{a_i}.
struct ExponentVec {
  std::vector<int> a;

  bool operator==(const ExponentVec&) const = default;
  bool is_zero() const {
    for (int x : a)
      if (x != 0) return false;
    return true;
  }
};

struct UnitDecomposition {
  zh_t unit;  // canonical: smallest nonnegative unit in its coset
  ExponentVec exponents;
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  // Factorizes h by trial division. Throws invalid_param_error for h < 2 or
  // h > 2^40.
  static std::shared_ptr<const Ring> make(zh_t h);

  zh_t modulus() const { return h_; }
  int t() const { return static_cast<int>(factors_.size()); }
  const std::vector<PrimePower>& factors() const { return factors_; }
  const PrimePower& factor(int i) const { return factors_.at(i); }

  // Number of units of Z_h, h * prod(1 - 1/p_i).
  zh_t unit_count() const;

  zh_t reduce(zh_t v) const {
    v %= h_;
    return v < 0 ? v + h_ : v;
  }
  zh_t add(zh_t a, zh_t b) const { return (a + b) % h_; }
  zh_t sub(zh_t a, zh_t b) const { return reduce(a - b); }
  zh_t neg(zh_t a) const { return a == 0 ? 0 : h_ - a; }
  zh_t mul(zh_t a, zh_t b) const {
    return static_cast<zh_t>((static_cast<__int128>(a) * b) % h_);
  }
  zh_t pow(zh_t a, zh_t e) const;

  bool is_unit(zh_t x) const;
  // Multiplicative inverse; throws invalid_param_error on non-units.
  zh_t inv(zh_t x) const;

  // x = unit * prod p_i^{a_i} with the unique exponent vector; x = 0 maps to
  // exponents (s_1,...,s_t) and unit 1 by convention.
  UnitDecomposition unit_decompose(zh_t x) const;

  // Projections onto Z_{p_i^{s_i}} and the complementary Z_{h/p_i^{s_i}}.
  zh_t pi(zh_t x, int i) const;
  zh_t theta(zh_t x, int i) const;
  zh_t theta_modulus(int i) const;

  // Unique x in Z_h with pi(x, i) = residues[i] for all i.
  zh_t crt_lift(const std::vector<zh_t>& residues) const;

  // x in the ideal (prod p_i^{alphas[i]})?
  bool in_ideal(zh_t x, const ExponentVec& alphas) const;

  // prod p_i^{alphas[i]} as a canonical residue (0 when that is h).
  zh_t ideal_generator(const ExponentVec& alphas) const;

  // p_i-adic valuation of x truncated at s_i (s_i for x = 0 mod p_i^{s_i}).
  int local_valuation(zh_t x, int i) const;

  // The local ring Z_{p_i^{s_i}}.
  std::shared_ptr<const Ring> local(int i) const;

  bool operator==(const Ring& o) const { return h_ == o.h_; }

 private:
  Ring() = default;
  zh_t h_ = 0;
  std::vector<PrimePower> factors_;
  std::vector<zh_t> crt_idem_;  // e_i = 1 mod q_i, 0 mod q_j (j != i)
  std::vector<std::shared_ptr<const Ring>> locals_;  // empty when t == 1
};

using RingPtr = std::shared_ptr<const Ring>;

inline void check_same_ring(const Ring& a, const Ring& b) {
  if (a.modulus() != b.modulus())
    throw invalid_param_error("operands belong to different rings (h=" +
                              std::to_string(a.modulus()) + " vs h=" +
                              std::to_string(b.modulus()) + ")");
}

}  // namespace grzh
