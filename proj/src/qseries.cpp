#include "weilform/qseries.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weilform/errors.h"

namespace weilform {

namespace {

int64_t sat_add(int64_t a, int64_t b) {
  if (a >= FracQSeries::kExact || b >= FracQSeries::kExact) return FracQSeries::kExact;
  return a + b;
}

int64_t sat_mul(int64_t a, int64_t m) {
  if (a >= FracQSeries::kExact) return FracQSeries::kExact;
  return a * m;
}

// Generalized pentagonal numbers g with signs: prod (1 - x^n) = sum sign * x^g.
std::vector<std::pair<int64_t, int>> pentagonal(int64_t limit) {
  std::vector<std::pair<int64_t, int>> out{{0, 1}};
  for (int64_t k = 1;; ++k) {
    int64_t g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 >= limit) break;
    int s = (k % 2) ? -1 : 1;
    out.emplace_back(g1, s);
    if (g2 < limit) out.emplace_back(g2, s);
  }
  return out;
}

}  // namespace

FracQSeries::FracQSeries(int64_t denom, int64_t trunc) : denom_(denom), trunc_(trunc) {
  if (denom <= 0) throw std::invalid_argument("series denominator must be positive");
  if (trunc_ > kExact) trunc_ = kExact;
}

FracQSeries FracQSeries::monomial(const Rational& c, int64_t e, int64_t denom, int64_t trunc) {
  FracQSeries s(denom, trunc);
  s.set(e, c);
  return s;
}

FracQSeries FracQSeries::constant(const Rational& c, int64_t trunc) {
  return monomial(c, 0, 1, trunc);
}

FracQSeries FracQSeries::from_coeffs(int64_t denom, int64_t lead,
                                     const std::vector<Integer>& coeffs, int64_t step) {
  FracQSeries s(denom, lead + step * static_cast<int64_t>(coeffs.size()));
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) s.terms_.emplace(lead + step * static_cast<int64_t>(i), Rational(coeffs[i]));
  return s;
}

Rational FracQSeries::coeff(int64_t e) const {
  if (e >= trunc_) throw InsufficientOrder("coefficient beyond truncation at q^" + to_string(make_rational(e, denom_)));
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational FracQSeries::coeff_at(const Rational& exponent) const {
  Rational scaled = exponent * denom_;
  if (scaled.get_den() != 1) return 0;
  if (!scaled.get_num().fits_slong_p()) throw std::out_of_range("exponent too large");
  int64_t e = scaled.get_num().get_si();
  return coeff(e);
}

void FracQSeries::set(int64_t e, const Rational& c) {
  if (e >= trunc_) throw std::out_of_range("cannot set coefficient beyond truncation");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

std::optional<int64_t> FracQSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Rational FracQSeries::trunc_exponent() const { return make_rational(trunc_, denom_); }

FracQSeries FracQSeries::with_denom(int64_t d) const {
  if (d % denom_ != 0) throw std::invalid_argument("with_denom: not a multiple");
  int64_t f = d / denom_;
  FracQSeries out(d, sat_mul(trunc_, f));
  for (auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e * f, c);
  return out;
}

FracQSeries FracQSeries::truncated(int64_t t) const {
  FracQSeries out(denom_, std::min(trunc_, t));
  for (auto& [e, c] : terms_) {
    if (e >= out.trunc_) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

FracQSeries FracQSeries::scaled(const Rational& c) const {
  FracQSeries out(denom_, trunc_);
  if (c == 0) return out;
  for (auto& [e, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, x * c);
  return out;
}

FracQSeries FracQSeries::shifted(int64_t s) const {
  FracQSeries out(denom_, sat_add(trunc_, s));
  for (auto& [e, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + s, x);
  return out;
}

FracQSeries FracQSeries::normalized() const {
  int64_t g = denom_;
  for (auto& [e, c] : terms_) g = std::gcd(g, e);
  if (!is_exact()) g = std::gcd(g, trunc_);
  if (g <= 1) return *this;
  FracQSeries out(denom_ / g, is_exact() ? kExact : trunc_ / g);
  for (auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e / g, c);
  return out;
}

bool FracQSeries::operator==(const FracQSeries& o) const {
  int64_t L = lcm64(denom_, o.denom_);
  FracQSeries a = with_denom(L), b = o.with_denom(L);
  return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

FracQSeries add(const FracQSeries& a0, const FracQSeries& b0) {
  int64_t L = lcm64(a0.denom(), b0.denom());
  FracQSeries a = a0.with_denom(L), b = b0.with_denom(L);
  int64_t t = std::min(a.trunc(), b.trunc());
  FracQSeries out = a.truncated(t);
  for (auto& [e, c] : b.terms()) {
    if (e >= t) break;
    out.set(e, out.coeff(e) + c);
  }
  return out;
}

FracQSeries neg(const FracQSeries& a) { return a.scaled(-1); }

FracQSeries sub(const FracQSeries& a, const FracQSeries& b) { return add(a, neg(b)); }

FracQSeries mul(const FracQSeries& a0, const FracQSeries& b0) {
  int64_t L = lcm64(a0.denom(), b0.denom());
  FracQSeries a = a0.with_denom(L), b = b0.with_denom(L);
  int64_t va = a.valuation().value_or(a.trunc());
  int64_t vb = b.valuation().value_or(b.trunc());
  int64_t t = std::min(sat_add(va, b.trunc()), sat_add(vb, a.trunc()));
  FracQSeries out(L, t);
  if (a.is_zero() || b.is_zero()) return out;

  std::vector<std::pair<int64_t, const Rational*>> bt;
  bt.reserve(b.terms().size());
  for (auto& [e, c] : b.terms()) bt.emplace_back(e, &c);

  int64_t lo = va + vb;
  bool bounded = t < FracQSeries::kExact;
  int64_t span = bounded ? t - lo : 0;
  size_t work = a.terms().size() * bt.size();
  Rational tmp;
  if (bounded && span <= static_cast<int64_t>(4 * work + 64)) {
    // Dense accumulator over the result window.
    std::vector<Rational> acc(static_cast<size_t>(std::max<int64_t>(span, 0)));
    std::vector<char> hit(acc.size(), 0);
    for (auto& [ea, ca] : a.terms()) {
      if (ea + vb >= t) break;
      for (auto& [eb, cb] : bt) {
        int64_t e = ea + eb;
        if (e >= t) break;
        mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb->get_mpq_t());
        size_t i = static_cast<size_t>(e - lo);
        acc[i] += tmp;
        hit[i] = 1;
      }
    }
    for (size_t i = 0; i < acc.size(); ++i)
      if (hit[i] && acc[i] != 0) out.set(lo + static_cast<int64_t>(i), acc[i]);
  } else {
    std::map<int64_t, Rational> acc;
    for (auto& [ea, ca] : a.terms()) {
      if (ea + vb >= t) break;
      for (auto& [eb, cb] : bt) {
        int64_t e = ea + eb;
        if (e >= t) break;
        mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb->get_mpq_t());
        acc[e] += tmp;
      }
    }
    for (auto& [e, c] : acc)
      if (c != 0) out.set(e, c);
  }
  return out;
}

FracQSeries inverse(const FracQSeries& a) {
  auto v = a.valuation();
  if (!v) throw std::domain_error("inverse of zero series");
  if (a.is_exact()) {
    if (a.terms().size() != 1) throw std::domain_error("inverse of exact non-monomial series");
    return FracQSeries::monomial(1 / a.terms().begin()->second, -*v, a.denom());
  }
  int64_t rel = a.trunc() - *v;
  std::vector<std::pair<int64_t, const Rational*>> at;
  for (auto& [e, c] : a.terms())
    if (e > *v) at.emplace_back(e - *v, &c);
  Rational c0inv = 1 / a.terms().begin()->second;
  std::vector<Rational> b(static_cast<size_t>(rel));
  b[0] = c0inv;
  Rational s, tmp;
  for (int64_t i = 1; i < rel; ++i) {
    s = 0;
    for (auto& [j, cj] : at) {
      if (j > i) break;
      if (b[i - j] == 0) continue;
      mpq_mul(tmp.get_mpq_t(), cj->get_mpq_t(), b[i - j].get_mpq_t());
      s += tmp;
    }
    b[i] = -s * c0inv;
  }
  FracQSeries out(a.denom(), -*v + rel);
  for (int64_t i = 0; i < rel; ++i)
    if (b[i] != 0) out.set(-*v + i, b[i]);
  return out;
}

FracQSeries power(const FracQSeries& a, int n) {
  if (n < 0) return power(inverse(a), -n);
  FracQSeries result = FracQSeries::constant(1);
  FracQSeries base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

FracQSeries rescale(const FracQSeries& a, int64_t m) {
  if (m <= 0) throw std::invalid_argument("rescale factor must be positive");
  FracQSeries out(a.denom(), sat_mul(a.trunc(), m));
  for (auto& [e, c] : a.terms()) out.set(e * m, c);
  return out;
}

std::vector<Integer> eta_product_coeffs(const std::map<int64_t, int64_t>& r, int64_t len) {
  std::vector<Integer> p(static_cast<size_t>(std::max<int64_t>(len, 0)));
  if (len <= 0) return p;
  p[0] = 1;
  for (auto& [d, e] : r) {
    if (d <= 0) throw std::invalid_argument("eta product: nonpositive scale");
    if (e == 0) continue;
    std::vector<std::pair<int64_t, int>> pent;
    for (auto& [g, s] : pentagonal((len + d - 1) / d))
      if (g > 0) pent.emplace_back(g * d, s);
    for (int64_t rep = 0; rep < std::abs(e); ++rep) {
      if (e > 0) {
        for (int64_t i = len - 1; i > 0; --i)
          for (auto& [g, s] : pent) {
            if (g > i) break;
            if (s > 0)
              p[i] += p[i - g];
            else
              p[i] -= p[i - g];
          }
      } else {
        for (int64_t i = 1; i < len; ++i)
          for (auto& [g, s] : pent) {
            if (g > i) break;
            if (s > 0)
              p[i] -= p[i - g];
            else
              p[i] += p[i - g];
          }
      }
    }
  }
  return p;
}

FracQSeries eta(int64_t scale, int64_t order) {
  if (scale <= 0 || order < 1) throw std::invalid_argument("eta: bad arguments");
  FracQSeries out(24, scale + 24 * order);
  for (auto& [g, s] : pentagonal((order + scale - 1) / scale)) {
    if (g * scale >= order) continue;
    out.set(scale + 24 * scale * g, s);
  }
  return out;
}

FracQSeries theta(int64_t order) {
  if (order < 1) throw std::invalid_argument("theta: order must be positive");
  FracQSeries out(1, order);
  out.set(0, 1);
  for (int64_t n = 1; n * n < order; ++n) out.set(n * n, 2);
  return out;
}

namespace {

FracQSeries eisenstein(int64_t order, int power, const Rational& c) {
  FracQSeries out(1, order);
  out.set(0, 1);
  for (int64_t n = 1; n < order; ++n) {
    Integer sigma = 0;
    for (int64_t d : divisors(n)) {
      Integer dp;
      mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), power);
      sigma += dp;
    }
    out.set(n, c * Rational(sigma));
  }
  return out;
}

}  // namespace

FracQSeries eisenstein_e4(int64_t order) { return eisenstein(order, 3, 240); }
FracQSeries eisenstein_e6(int64_t order) { return eisenstein(order, 5, -504); }

FracQSeries delta(int64_t order) {
  return FracQSeries::from_coeffs(1, 1, eta_product_coeffs({{1, 24}}, order));
}

FracQSeries j_invariant(int64_t order) {
  if (order < 1) throw std::invalid_argument("j_invariant: order must be positive");
  int64_t len = order + 1;
  FracQSeries e4 = eisenstein_e4(len);
  FracQSeries inv_prod = FracQSeries::from_coeffs(1, -1, eta_product_coeffs({{1, -24}}, len));
  return mul(mul(mul(e4, e4), e4), inv_prod);
}

FracQSeries product_expand(const std::map<int64_t, Integer>& exponents, const Rational& weyl,
                           int64_t order) {
  if (order < 1) throw std::invalid_argument("product_expand: order must be positive");
  // log-derivative recurrence: m p_m = sum_{j=1}^m b_j p_{m-j},
  // b_j = -sum_{d|j} d e_d
  std::vector<Integer> b(static_cast<size_t>(order));
  for (auto& [n, e] : exponents) {
    if (n < 1) throw std::invalid_argument("product_expand: exponent index must be >= 1");
    if (e == 0) continue;
    for (int64_t j = n; j < order; j += n) b[j] -= n * e;
  }
  std::vector<Integer> p(static_cast<size_t>(order));
  p[0] = 1;
  Integer s;
  for (int64_t m = 1; m < order; ++m) {
    s = 0;
    for (int64_t j = 1; j <= m; ++j)
      if (b[j] != 0 && p[m - j] != 0) s += b[j] * p[m - j];
    mpz_divexact_ui(p[m].get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(m));
  }
  int64_t den = weyl.get_den().get_si();
  int64_t lead = Rational(weyl * den).get_num().get_si();
  return FracQSeries::from_coeffs(den, lead, p, den).normalized();
}

ProductExponents extract_exponents(const FracQSeries& f, int64_t order) {
  auto v = f.valuation();
  if (!v) throw std::domain_error("extract_exponents: zero series");
  if (f.terms().begin()->second != 1)
    throw std::domain_error("extract_exponents: leading coefficient is not 1");
  int64_t den = f.denom();
  ProductExponents out;
  out.weyl = make_rational(*v, den);
  int64_t rel = f.is_exact() ? order : std::min(order, floor_div(f.trunc() - *v - 1, den) + 1);
  std::vector<Rational> p(static_cast<size_t>(std::max<int64_t>(rel, 1)));
  for (auto& [e, c] : f.terms()) {
    int64_t d = e - *v;
    if (d % den != 0) throw std::domain_error("extract_exponents: non-integral exponent step");
    if (d / den < rel) p[d / den] = c;
  }
  std::vector<Rational> b(p.size());
  Rational s;
  for (int64_t m = 1; m < rel; ++m) {
    s = m * p[m];
    for (int64_t j = 1; j < m; ++j)
      if (b[j] != 0 && p[m - j] != 0) s -= b[j] * p[m - j];
    b[m] = s;
  }
  // B_j = -b_j = sum_{d|j} d e_d
  for (int64_t n = 1; n < rel; ++n) {
    Rational acc = 0;
    for (int64_t d : divisors(n)) {
      int mu = moebius(n / d);
      if (mu) acc -= mu * b[d];
    }
    out.exponents[n] = acc / n;
  }
  return out;
}

std::string to_text(const FracQSeries& f) {
  std::ostringstream os;
  auto exponent_str = [&](int64_t e) {
    Rational x = make_rational(e, f.denom());
    if (x.get_den() == 1) return x.get_num().get_str();
    return "(" + x.get_str() + ")";
  };
  bool first = true;
  for (auto& [e, c] : f.terms()) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "q";
    if (!(e == f.denom())) os << "^" << exponent_str(e);
  }
  if (!f.is_exact()) {
    if (!first) os << " + ";
    os << "O(q";
    if (f.trunc() != f.denom()) os << "^" << exponent_str(f.trunc());
    os << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

}  // namespace weilform
