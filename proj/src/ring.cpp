#include "grzh/ring.hpp"

#include <algorithm>
#include <numeric>

namespace grzh {

namespace {
constexpr zh_t kMaxModulus = zh_t(1) << 40;

zh_t egcd(zh_t a, zh_t b, zh_t& x, zh_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  zh_t x1, y1;
  zh_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}
}  // namespace

std::shared_ptr<const Ring> Ring::make(zh_t h) {
  if (h < 2) throw invalid_param_error("modulus must be >= 2");
  if (h > kMaxModulus) throw invalid_param_error("modulus exceeds 2^40");

  auto ring = std::shared_ptr<Ring>(new Ring());
  ring->h_ = h;

  zh_t rem = h;
  for (zh_t p = 2; p * p <= rem; ++p) {
    if (rem % p) continue;
    PrimePower pp{p, 0, 1};
    while (rem % p == 0) {
      rem /= p;
      ++pp.s;
      pp.q *= p;
    }
    ring->factors_.push_back(pp);
  }
  if (rem > 1) ring->factors_.push_back({rem, 1, rem});
  // trial division emits primes in increasing order already

  for (const auto& pp : ring->factors_) {
    zh_t m = h / pp.q;         // 1 when t == 1
    zh_t x, y;
    egcd(m % pp.q, pp.q, x, y);
    zh_t e = ring->mul(ring->reduce(m), ring->reduce(x));
    ring->crt_idem_.push_back(e);
  }

  if (ring->factors_.size() > 1) {
    for (const auto& pp : ring->factors_) ring->locals_.push_back(Ring::make(pp.q));
  }
  return ring;
}

zh_t Ring::unit_count() const {
  zh_t c = 1;
  for (const auto& pp : factors_) c *= (pp.p - 1) * (pp.q / pp.p);
  return c;
}

zh_t Ring::pow(zh_t a, zh_t e) const {
  zh_t r = reduce(1);
  a = reduce(a);
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool Ring::is_unit(zh_t x) const { return std::gcd(x, h_) == 1; }

zh_t Ring::inv(zh_t x) const {
  zh_t a, b;
  zh_t g = egcd(reduce(x), h_, a, b);
  if (g != 1) throw invalid_param_error("element is not a unit");
  return reduce(a);
}

int Ring::local_valuation(zh_t x, int i) const {
  const auto& pp = factors_.at(i);
  zh_t r = x % pp.q;
  if (r == 0) return pp.s;
  int v = 0;
  while (r % pp.p == 0) {
    r /= pp.p;
    ++v;
  }
  return v;
}

UnitDecomposition Ring::unit_decompose(zh_t x) const {
  x = reduce(x);
  UnitDecomposition d;
  d.exponents.a.resize(factors_.size());
  if (x == 0) {
    for (size_t i = 0; i < factors_.size(); ++i) d.exponents.a[i] = factors_[i].s;
    d.unit = reduce(1);
    return d;
  }
  zh_t pw = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    int v = local_valuation(x, static_cast<int>(i));
    d.exponents.a[i] = v;
    for (int j = 0; j < v; ++j) pw *= factors_[i].p;
  }
  // valid units form a coset mod g = h / pw; take the smallest unit in it
  zh_t g = h_ / pw;
  zh_t y = (x / pw) % g;  // unit candidates are y + k*g
  d.unit = -1;
  for (zh_t u = y; u < h_; u += g) {
    if (is_unit(u)) {
      d.unit = u;
      break;
    }
  }
  if (d.unit < 0) throw internal_check_error("unit_decompose: coset holds no unit");
  return d;
}

zh_t Ring::pi(zh_t x, int i) const { return reduce(x) % factors_.at(i).q; }

zh_t Ring::theta_modulus(int i) const { return h_ / factors_.at(i).q; }

zh_t Ring::theta(zh_t x, int i) const { return reduce(x) % theta_modulus(i); }

zh_t Ring::crt_lift(const std::vector<zh_t>& residues) const {
  if (residues.size() != factors_.size())
    throw invalid_param_error("crt_lift: need one residue per prime factor");
  zh_t x = 0;
  for (size_t i = 0; i < residues.size(); ++i) {
    if (residues[i] < 0 || residues[i] >= factors_[i].q)
      throw invalid_param_error("crt_lift: residue out of range");
    x = add(x, mul(residues[i], crt_idem_[i]));
  }
  return x;
}

zh_t Ring::ideal_generator(const ExponentVec& alphas) const {
  if (alphas.a.size() != factors_.size())
    throw invalid_param_error("exponent vector has wrong length");
  zh_t g = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    int ai = alphas.a[i];
    if (ai < 0 || ai > factors_[i].s)
      throw invalid_param_error("exponent out of range");
    for (int j = 0; j < ai; ++j) g *= factors_[i].p;
  }
  return reduce(g);  // 0 when the generator is h itself
}

bool Ring::in_ideal(zh_t x, const ExponentVec& alphas) const {
  if (alphas.a.size() != factors_.size())
    throw invalid_param_error("exponent vector has wrong length");
  zh_t g = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    int ai = alphas.a[i];
    if (ai < 0 || ai > factors_[i].s)
      throw invalid_param_error("exponent out of range");
    for (int j = 0; j < ai; ++j) g *= factors_[i].p;
  }
  return reduce(x) % g == 0;
}

std::shared_ptr<const Ring> Ring::local(int i) const {
  if (factors_.size() == 1) {
    if (i != 0) throw invalid_param_error("prime index out of range");
    return shared_from_this();
  }
  return locals_.at(i);
}

}  // namespace grzh
