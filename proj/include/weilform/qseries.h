// Exact truncated Laurent series in q^(1/denom) with rational coefficients.
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weilform/arith.h"

namespace weilform {

class FracQSeries {
 public:
  // Truncation value meaning "no unknown tail" (an exact Laurent polynomial).
  static constexpr int64_t kExact = std::numeric_limits<int64_t>::max() / 4;

  FracQSeries() = default;
  explicit FracQSeries(int64_t denom, int64_t trunc = kExact);

  // c * q^(e/denom)
  static FracQSeries monomial(const Rational& c, int64_t e, int64_t denom = 1,
                              int64_t trunc = kExact);
  static FracQSeries constant(const Rational& c, int64_t trunc = kExact);
  static FracQSeries from_coeffs(int64_t denom, int64_t lead,
                                 const std::vector<Integer>& coeffs, int64_t step = 1);

  int64_t denom() const { return denom_; }
  int64_t trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  const std::map<int64_t, Rational>& terms() const { return terms_; }

  // Coefficient at scaled exponent e (true exponent e/denom); throws if e is
  // at or beyond the truncation.
  Rational coeff(int64_t e) const;
  // Coefficient at an arbitrary rational exponent.
  Rational coeff_at(const Rational& exponent) const;
  bool known(int64_t e) const { return e < trunc_; }

  void set(int64_t e, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  // Lowest scaled exponent with nonzero coefficient.
  std::optional<int64_t> valuation() const;
  Rational trunc_exponent() const;  // trunc/denom; only meaningful if !is_exact()

  FracQSeries with_denom(int64_t d) const;  // d must be a multiple of denom
  FracQSeries truncated(int64_t t) const;    // min(trunc, t)
  FracQSeries scaled(const Rational& c) const;
  FracQSeries shifted(int64_t e) const;      // multiply by q^(e/denom)
  // Smallest denominator representing the same series.
  FracQSeries normalized() const;

  bool operator==(const FracQSeries& o) const;
  bool operator!=(const FracQSeries& o) const { return !(*this == o); }

 private:
  int64_t denom_ = 1;
  int64_t trunc_ = kExact;
  std::map<int64_t, Rational> terms_;
};

FracQSeries add(const FracQSeries& a, const FracQSeries& b);
FracQSeries sub(const FracQSeries& a, const FracQSeries& b);
FracQSeries neg(const FracQSeries& a);
FracQSeries mul(const FracQSeries& a, const FracQSeries& b);
FracQSeries power(const FracQSeries& a, int n);
// 1/a for a with nonzero leading term and finite truncation.
FracQSeries inverse(const FracQSeries& a);
FracQSeries rescale(const FracQSeries& a, int64_t m);

// Multiplicative pieces. Orders count q-units past the leading exponent.
FracQSeries eta(int64_t scale, int64_t order);
FracQSeries theta(int64_t order);
FracQSeries eisenstein_e4(int64_t order);
FracQSeries eisenstein_e6(int64_t order);
FracQSeries delta(int64_t order);
FracQSeries j_invariant(int64_t order);  // q^-1 + 744 + ... + O(q^order)

// Coefficients 0..len-1 of prod_d prod_{n>=1} (1 - q^(d n))^(r_d), exact.
std::vector<Integer> eta_product_coeffs(const std::map<int64_t, int64_t>& r, int64_t len);

// q^weyl * prod_{n>=1} (1 - q^n)^(e_n), known through q^(weyl + order - 1).
FracQSeries product_expand(const std::map<int64_t, Integer>& exponents,
                           const Rational& weyl, int64_t order);

struct ProductExponents {
  Rational weyl;
  std::map<int64_t, Rational> exponents;  // n = 1 .. order - 1
};
// Inverse of product_expand; requires leading coefficient 1.
ProductExponents extract_exponents(const FracQSeries& f, int64_t order);

// "1/2*q^-3 - 7*q + 20*q^4 + O(q^16)"
std::string to_text(const FracQSeries& f);

}  // namespace weilform
