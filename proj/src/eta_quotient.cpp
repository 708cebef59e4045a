#include "weilform/eta_quotient.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "weilform/errors.h"

namespace weilform {

Rational eta_weight(const EtaExponents& r) {
  int64_t s = 0;
  for (auto& [d, e] : r) s += e;
  return make_rational(s, 2);
}

Rational eta_leading_exponent(const EtaExponents& r) {
  int64_t s = 0;
  for (auto& [d, e] : r) s += d * e;
  return make_rational(s, 24);
}

Rational ligozat_order(int64_t N, int64_t d, const EtaExponents& r) {
  Rational acc = 0;
  for (auto& [delta, e] : r) {
    int64_t g = std::gcd(d, delta);
    acc += make_rational(g * g * e, std::gcd(d, N / d) * d * delta);
  }
  return acc * make_rational(N, 24);
}

FracQSeries eta_quotient_series(const EtaExponents& r, int64_t trunc) {
  Rational lead = eta_leading_exponent(r);
  if (lead.get_den() == 1) {
    int64_t l = lead.get_num().get_si();
    return FracQSeries::from_coeffs(1, l, eta_product_coeffs(r, trunc - l)).truncated(trunc);
  }
  int64_t l24 = Rational(lead * 24).get_num().get_si();
  int64_t len = trunc - floor_div(l24, 24);
  auto c = eta_product_coeffs(r, len);
  FracQSeries s = FracQSeries::from_coeffs(24, l24, c, 24);
  return s.truncated(24 * trunc);
}

const EtaExponents& theta_exponents() {
  static const EtaExponents r{{1, -2}, {2, 5}, {4, -2}};
  return r;
}

const std::vector<int64_t>& supported_levels() {
  static const std::vector<int64_t> levels{4, 12};
  return levels;
}

bool is_supported_level(int64_t N) {
  auto& l = supported_levels();
  return std::find(l.begin(), l.end(), N) != l.end();
}

int64_t gamma0_index(int64_t N) {
  Rational idx = N;
  for (int64_t p : prime_divisors(N)) idx *= 1 + make_rational(1, p);
  return idx.get_num().get_si();
}

namespace {

Rational floor_q(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(f);
}

// Exact inverse of a square rational matrix.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular Ligozat matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rational f = 1 / a[c][c];
    for (size_t j = 0; j < n; ++j) a[c][j] *= f, inv[c][j] *= f;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational g = a[i][c];
      for (size_t j = 0; j < n; ++j) a[i][j] -= g * a[c][j], inv[i][j] -= g * inv[c][j];
    }
  }
  return inv;
}

// Row-echelon accumulator keyed on lowest exponent.
struct Echelon {
  std::vector<std::pair<int64_t, std::vector<Rational>>> rows;  // pivot, dense coeffs
  int64_t lo = 0;

  bool insert(std::vector<Rational> v) {
    for (auto& [p, row] : rows) {
      size_t i = static_cast<size_t>(p - lo);
      if (v[i] == 0) continue;
      Rational f = v[i];
      for (size_t j = i; j < v.size(); ++j)
        if (row[j] != 0) v[j] -= f * row[j];
    }
    size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    if (i == v.size()) return false;
    Rational f = 1 / v[i];
    for (size_t j = i; j < v.size(); ++j) v[j] *= f;
    rows.emplace_back(lo + static_cast<int64_t>(i), std::move(v));
    return true;
  }
};

}  // namespace

WindowSpace window_space(int64_t N, const Rational& k, int64_t pole) {
  if (!is_supported_level(N)) throw UnsupportedLevel("unsupported level " + std::to_string(N));
  Rational twok = 2 * k;
  if (twok.get_den() != 1 || twok.get_num() % 2 == 0 || twok <= 0)
    throw std::invalid_argument("weight must be a positive half-odd integer");
  if (pole < 0) throw std::invalid_argument("pole order must be nonnegative");
  int64_t tk = twok.get_num().get_si();

  std::vector<int64_t> D = divisors(N);
  size_t n = D.size();
  std::vector<int64_t> U(n);
  Rational ub = k * gamma0_index(N) / 12;
  for (size_t i = 0; i < n; ++i) {
    int64_t d = D[i];
    Rational E = make_rational(pole * d * d, N * std::gcd(d * d, N));
    U[i] = floor_q(E + twok * ligozat_order(N, d, theta_exponents())).get_num().get_si();
    if (d != N) ub += E;
  }
  int64_t total = std::accumulate(U.begin(), U.end(), int64_t{0});

  // Integer form of the inverse Ligozat matrix: s = Linv_num * a / Linv_den.
  std::vector<std::vector<Rational>> L(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) L[i][j] = ligozat_order(N, D[i], {{D[j], 1}});
  auto Linv = invert(L);
  Integer den = 1;
  for (auto& row : Linv)
    for (auto& x : row) den = lcm(den, Integer(x.get_den()));
  int64_t lden = den.get_si();
  std::vector<std::vector<int64_t>> Lnum(n, std::vector<int64_t>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Lnum[i][j] = Rational(Linv[i][j] * lden).get_num().get_si();

  std::vector<std::pair<int64_t, int>> fac;  // prime exponent table for the square test
  std::vector<int64_t> ps = prime_divisors(N);
  std::vector<std::vector<int>> vpd(ps.size(), std::vector<int>(n, 0));
  for (size_t a = 0; a < ps.size(); ++a)
    for (size_t i = 0; i < n; ++i) {
      int64_t d = D[i];
      while (d % ps[a] == 0) d /= ps[a], ++vpd[a][i];
    }

  std::vector<std::pair<int64_t, EtaExponents>> cands;
  std::vector<int64_t> parts(n, 0), s(n);
  // Enumerate divisors a_d >= -U_d with sum zero, i.e. compositions of total.
  auto consider = [&]() {
    for (size_t i = 0; i < n; ++i) {
      int64_t acc = 0;
      for (size_t j = 0; j < n; ++j) acc += Lnum[i][j] * (parts[j] - U[j]);
      if (acc % lden != 0) return;
      s[i] = acc / lden;
    }
    int64_t c1 = 0, c2 = 0;
    for (size_t i = 0; i < n; ++i) c1 += D[i] * s[i], c2 += (N / D[i]) * s[i];
    if (mod(c1, 24) || mod(c2, 24)) return;
    for (size_t a = 0; a < ps.size(); ++a) {
      int64_t v = 0;
      for (size_t i = 0; i < n; ++i) v += vpd[a][i] * s[i];
      if (mod(v, 2)) return;
    }
    EtaExponents r;
    int64_t weight1 = 0;
    for (size_t i = 0; i < n; ++i) {
      auto th = theta_exponents().find(D[i]);
      int64_t e = s[i] + (th == theta_exponents().end() ? 0 : tk * th->second);
      if (e) r[D[i]] = e;
      weight1 += std::abs(e);
    }
    cands.emplace_back(weight1, std::move(r));
  };
  auto rec = [&](auto&& self, size_t i, int64_t left) -> void {
    if (i + 1 == n) {
      parts[i] = left;
      consider();
      return;
    }
    for (int64_t v = 0; v <= left; ++v) {
      parts[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
  std::sort(cands.begin(), cands.end());

  WindowSpace w;
  w.N = N;
  w.k = k;
  w.pole = pole;
  w.dim = 1 + total;
  // Any nonzero element has order at infinity at most ub, so coefficients
  // on [-pole, ub] detect linear independence.
  int64_t check = floor_q(ub).get_num().get_si() + 2;
  for (int attempt = 0; attempt < 4 && static_cast<int64_t>(w.generators.size()) < w.dim; ++attempt) {
    Echelon ech;
    ech.lo = -pole;
    w.generators.clear();
    int64_t len = check + pole;
    for (auto& [wt, r] : cands) {
      FracQSeries f = eta_quotient_series(r, check);
      std::vector<Rational> v(static_cast<size_t>(len), 0);
      for (auto& [e, c] : f.terms()) v[static_cast<size_t>(e + pole)] = c;
      if (ech.insert(std::move(v))) w.generators.push_back(r);
      if (static_cast<int64_t>(w.generators.size()) == w.dim) break;
    }
    check = 2 * check + N;
  }
  if (static_cast<int64_t>(w.generators.size()) != w.dim)
    throw MathInconsistency("eta quotients span only " + std::to_string(w.generators.size()) +
                            " of the expected " + std::to_string(w.dim) + " dimensions at level " +
                            std::to_string(N));
  return w;
}

std::vector<FracQSeries> window_series(const WindowSpace& w, int64_t trunc) {
  std::vector<FracQSeries> out;
  for (auto& r : w.generators) out.push_back(eta_quotient_series(r, trunc));
  return out;
}

}  // namespace weilform
