#include "weilform/arith.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace weilform {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t lcm64(int64_t a, int64_t b) { return std::lcm(a, b); }

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t isqrt(int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  int64_t r = static_cast<int64_t>(__builtin_sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(int64_t n) {
  if (n < 0) return false;
  int64_t r = isqrt(n);
  return r * r == n;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  n = std::abs(n);
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(int64_t n) {
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto& [p, e] : factorize(n)) {
    size_t cur = out.size();
    int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < cur; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int64_t> prime_divisors(int64_t n) {
  std::vector<int64_t> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

int moebius(int64_t n) {
  int mu = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

namespace {

// Jacobi symbol (a/n) for odd positive n.
int jacobi(int64_t a, int64_t n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) n /= 2, ++v;
  if (v > 0) {
    if (a % 2 == 0) return 0;
    int64_t r = mod(a, 8);
    if ((v % 2 == 1) && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && i > start && i + 1 < s.size()) {
      seen_slash = true;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad rational: " + s);
  }
  if (start == s.size()) throw std::invalid_argument("bad rational: " + s);
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rational r;
  if (r.set_str(body, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational make_rational(int64_t num, int64_t den) {
  Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
  r.canonicalize();
  return r;
}

Rational frac_part(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - Rational(fl);
}

}  // namespace weilform
