#include "weilform/borcherds.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "weilform/errors.h"
#include "weilform/eta_quotient.h"
#include "weilform/scalar_forms.h"

namespace weilform {

std::string to_string(EtaMatchKind k) {
  switch (k) {
    case EtaMatchKind::exact: return "exact";
    case EtaMatchKind::cofactor: return "cofactor";
    case EtaMatchKind::none: return "none";
  }
  return "none";
}

namespace {

FracQSeries integral_series(const FracQSeries& f) {
  FracQSeries g = f.normalized();
  if (g.denom() != 1) throw std::invalid_argument("expected a series in integral powers of q");
  return g;
}

int64_t lowest_exponent(const FracQSeries& f) { return f.valuation().value_or(0); }

}  // namespace

Rational weyl_vector(const DiscriminantForm& D, const FracQSeries& f0, const FracQSeries& hstar) {
  FracQSeries f = integral_series(f0);
  Rational rho = 0;
  for (auto& [e, c] : f.terms()) {
    if (e > 0) break;
    int64_t n = -e;
    if (!hstar.known(n)) throw InsufficientOrder("H* table too short for n = " + std::to_string(n));
    rho -= s_of(D, n) * c * hstar.coeff(n);
  }
  return rho;
}

std::vector<int64_t> principal_discriminants(const FracQSeries& f0) {
  FracQSeries f = integral_series(f0);
  std::vector<int64_t> out;
  for (auto& [e, c] : f.terms()) {
    if (e >= 0) break;
    for (int64_t n = 1; n * n <= -e; ++n)
      if (e % (n * n) == 0 && mod(e / (n * n), 4) <= 1) out.push_back(e / (n * n));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<int64_t, Integer> cm_divisor_orders(const DiscriminantForm& D, const FracQSeries& f0,
                                             const std::vector<int64_t>& discriminants) {
  FracQSeries f = integral_series(f0);
  int64_t lo = lowest_exponent(f);
  std::map<int64_t, Integer> out;
  for (int64_t disc : discriminants) {
    if (disc >= 0) throw std::invalid_argument("CM discriminants must be negative");
    Rational acc = 0;
    for (int64_t n = 1; disc * n * n >= lo; ++n) acc += s_of(D, disc * n * n) * f.coeff(disc * n * n);
    if (acc.get_den() != 1) throw MathInconsistency("non-integral divisor order at discriminant " + std::to_string(disc));
    out[disc] = acc.get_num();
  }
  return out;
}

BorcherdsLift lift(const DiscriminantForm& D, const FracQSeries& f0, int64_t order, const FracQSeries& hstar) {
  if (order < 1) throw std::invalid_argument("lift: order must be positive");
  FracQSeries f = integral_series(f0);
  for (auto& [e, c] : f.terms()) {
    if (e > 0) break;
    Rational v = s_of(D, e) * c;
    if (v.get_den() != 1)
      throw std::domain_error("lift: s(n)c(n) is not integral at n = " + std::to_string(e));
  }
  int64_t need = (order - 1) * (order - 1);
  if (!f.known(need)) throw InsufficientOrder("lift: input known only below q^" + std::to_string(f.trunc()) +
                                              ", need q^" + std::to_string(need));
  BorcherdsLift L;
  L.group_level = D.level() % 4 == 0 ? D.level() / 4 : D.level();
  L.weight = s_of(D, 0) * f.coeff(0);
  L.weyl_rho = weyl_vector(D, f, hstar);
  for (int64_t n = 1; n < order; ++n) {
    Rational e = s_of(D, n * n) * f.coeff(n * n);
    if (e.get_den() != 1) throw MathInconsistency("non-integral product exponent at n = " + std::to_string(n));
    if (e != 0) L.exponents[n] = e.get_num();
  }
  L.expansion = product_expand(L.exponents, L.weyl_rho, order);
  L.divisors = cm_divisor_orders(D, f, principal_discriminants(f));
  return L;
}

BorcherdsLift lift(const DiscriminantForm& D, const FracQSeries& f0, int64_t order) {
  FracQSeries f = integral_series(f0);
  int64_t lo = std::min<int64_t>(lowest_exponent(f), 0);
  FracQSeries hstar = eisenstein_G_epsilon(D, std::max<int64_t>(-lo + 1, 12));
  return lift(D, f, order, hstar);
}

std::vector<int64_t> default_eta_pool(const DiscriminantForm& D) {
  int64_t N = D.level();
  int64_t M = N % 4 == 0 ? N / 4 : N;
  return divisors(6 * M);
}

EtaMatch eta_quotient_match(const BorcherdsLift& L, const std::vector<int64_t>& pool0) {
  EtaMatch out;
  const FracQSeries& x = L.expansion;
  if (x.is_zero()) return out;
  int64_t order = floor_div(x.trunc() - *x.valuation() - 1, x.denom()) + 1;
  ProductExponents pe = extract_exponents(x, order);
  std::vector<int64_t> pool = pool0;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  // e_n = sum_{d | n, d in pool} r_d, solved in increasing d.
  std::map<int64_t, Rational> r;
  for (int64_t d : pool) {
    if (d < 1 || d >= order) continue;
    Rational v = pe.exponents.at(d);
    for (auto& [d2, r2] : r)
      if (d % d2 == 0) v -= r2;
    r[d] = v;
  }
  bool exact = true;
  for (auto& [d, v] : r)
    if (v.get_den() != 1) exact = false;
  for (int64_t n = 1; n < order && exact; ++n) {
    Rational v = 0;
    for (auto& [d, rd] : r)
      if (n % d == 0) v += rd;
    if (v != pe.exponents.at(n)) exact = false;
  }
  Rational rho = 0;
  for (auto& [d, v] : r) rho += d * v;
  if (exact && rho / 24 == pe.weyl) {
    out.kind = EtaMatchKind::exact;
    for (auto& [d, v] : r)
      if (v != 0) out.exponents[d] = v.get_num().get_si();
    return out;
  }

  // Cofactor: the eta quotient on Γ0(M) whose order at every cusp equals the
  // Weyl exponent; the quotient is then holomorphic and nonvanishing at cusps.
  int64_t M = L.group_level;
  std::vector<int64_t> Ds = divisors(M);
  size_t n = Ds.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = ligozat_order(M, Ds[i], {{Ds[j], 1}});
    a[i][n] = pe.weyl;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return out;
    std::swap(a[c], a[piv]);
    Rational f = 1 / a[c][c];
    for (auto& v : a[c]) v *= f;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational g = a[i][c];
      for (size_t j = 0; j <= n; ++j) a[i][j] -= g * a[c][j];
    }
  }
  EtaExponents q;
  for (size_t i = 0; i < n; ++i) {
    if (a[i][n].get_den() != 1) return out;
    if (a[i][n] != 0) q[Ds[i]] = a[i][n].get_num().get_si();
  }
  FracQSeries denom_series = eta_quotient_series(q, floor_div(x.trunc(), x.denom()) + 1);
  FracQSeries cof = q.empty() ? x : mul(x, inverse(denom_series));
  out.kind = EtaMatchKind::cofactor;
  out.exponents.insert(q.begin(), q.end());
  out.cofactor = cof.normalized();
  return out;
}

}  // namespace weilform
