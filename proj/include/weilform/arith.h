// Small integer number theory used throughout: Kronecker symbols,
// factorizations, divisor lists and rational helpers.
#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <utility>
#include <vector>

namespace weilform {

using Integer = mpz_class;
using Rational = mpq_class;

int64_t floor_div(int64_t a, int64_t b);
int64_t mod(int64_t a, int64_t m);  // result in [0, m)
int64_t lcm64(int64_t a, int64_t b);
bool is_prime(int64_t n);
bool is_square(int64_t n);
bool is_squarefree(int64_t n);
int64_t isqrt(int64_t n);

// (p, e) pairs with p ascending; n must be nonzero, sign is ignored.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);
std::vector<int64_t> divisors(int64_t n);
std::vector<int64_t> prime_divisors(int64_t n);
int moebius(int64_t n);

// Kronecker symbol (a/n) for arbitrary integers, with (a/2) = (2/a) for odd a
// and (a/-1) = sign(a).
int kronecker(int64_t a, int64_t n);

// Parse "p/q" or "p" into a canonical rational; throws std::invalid_argument.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
Rational make_rational(int64_t num, int64_t den = 1);

// Rational reduced mod 1 into [0, 1).
Rational frac_part(const Rational& r);

}  // namespace weilform
