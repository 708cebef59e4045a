#include "weilform/scalar_forms.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "weilform/errors.h"
#include "weilform/eta_quotient.h"

namespace weilform {

namespace {

int64_t ceil_q(const Rational& x) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_si();
}

// Linear combinations of `rows` vanishing at every exponent rejected by
// `allowed` below the truncation.
template <class Allowed>
std::vector<FracQSeries> impose_vanishing(std::vector<FracQSeries> rows, Allowed allowed) {
  if (rows.empty()) return rows;
  int64_t lo = FracQSeries::kExact, hi = rows[0].trunc();
  for (auto& r : rows) {
    if (auto v = r.valuation()) lo = std::min(lo, *v);
    hi = std::min(hi, r.trunc());
  }
  if (lo >= hi) return rows;
  for (int64_t e = lo; e < hi && !rows.empty(); ++e) {
    if (allowed(e)) continue;
    size_t piv = rows.size();
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].terms().count(e)) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    FracQSeries p = rows[piv];
    rows.erase(rows.begin() + static_cast<long>(piv));
    p = p.scaled(1 / p.coeff(e));
    for (auto& r : rows) {
      auto it = r.terms().find(e);
      if (it != r.terms().end()) r = sub(r, p.scaled(it->second));
    }
  }
  return rows;
}

// Fully reduced echelon form keyed by leading exponent, leading coefficient 1.
std::map<int64_t, FracQSeries> echelonize(std::vector<FracQSeries> rows) {
  std::map<int64_t, FracQSeries> red;
  std::sort(rows.begin(), rows.end(), [](const FracQSeries& a, const FracQSeries& b) {
    return a.valuation().value_or(FracQSeries::kExact) < b.valuation().value_or(FracQSeries::kExact);
  });
  for (auto f : rows) {
    for (auto& [p, g] : red) {
      auto it = f.terms().find(p);
      if (it != f.terms().end()) f = sub(f, g.scaled(it->second));
    }
    // Reduction can create terms at pivots processed earlier only when a
    // pivot row has support on a later pivot, which full reduction prevents.
    if (f.is_zero()) continue;
    int64_t p = *f.valuation();
    f = f.scaled(1 / f.coeff(p));
    for (auto& [q, g] : red) {
      auto it = g.terms().find(p);
      if (it != g.terms().end()) g = sub(g, f.scaled(it->second));
    }
    red.emplace(p, std::move(f));
  }
  return red;
}

}  // namespace

EpsilonSpaceSpec make_space(const DiscriminantForm& D, const Rational& k, SpaceKind kind) {
  EpsilonSpaceSpec s;
  s.D = D;
  s.eps = epsilon_vector(D);
  s.N = s.eps.N;
  s.k = k;
  s.kind = kind;
  if (!is_supported_level(s.N)) throw UnsupportedLevel("unsupported level " + std::to_string(s.N));
  Rational twok = 2 * k;
  if (twok.get_den() != 1 || twok.get_num() % 2 == 0 || twok <= 0)
    throw std::invalid_argument("weight must be a positive half-odd integer");
  if (mod(twok.get_num().get_si() - D.signature(), 4) != 0)
    throw std::invalid_argument("weight and signature are incompatible: need 2k = r mod 4");
  for (int64_t p : prime_divisors(s.eps.M))
    if (!s.eps.eps.count(p)) throw std::invalid_argument("trivial local character at " + std::to_string(p));
  return s;
}

bool allowed_exponent(const EpsilonSpaceSpec& spec, int64_t n) { return represents_norm(spec.eps, n); }

const FracQSeries& ReducedBasis::form(int64_t m) const {
  auto it = forms.find(m);
  if (it == forms.end()) throw std::out_of_range("no reduced form f_" + std::to_string(m));
  return it->second;
}

std::vector<FracQSeries> seed_forms(int64_t N, const Rational& k, int64_t order) {
  WindowSpace w = window_space(N, k, 0);
  std::vector<FracQSeries> out;
  for (auto& [m, f] : echelonize(window_series(w, order))) out.push_back(f);
  return out;
}

int64_t elimination_bound(const EpsilonSpaceSpec& spec, int64_t min_exp) {
  return ceil_q(spec.k * gamma0_index(spec.N) / 12) + std::abs(min_exp) + 2;
}

ReducedBasis build_weak_basis(const EpsilonSpaceSpec& spec, int64_t min_exp, int64_t order) {
  if (min_exp > 0) throw std::invalid_argument("min_exp must be <= 0");
  if (spec.kind != SpaceKind::weak) min_exp = 0;
  if (order < elimination_bound(spec, min_exp))
    throw InsufficientOrder("order " + std::to_string(order) + " is below the elimination bound " +
                            std::to_string(elimination_bound(spec, min_exp)));
  const int64_t N = spec.N;
  auto allowed = [&](int64_t n) { return allowed_exponent(spec, n); };
  const int64_t P0 = -min_exp;
  int64_t P = std::min(P0, N);
  int64_t Tw = order;
  std::map<int64_t, FracQSeries> forms;
  for (;;) {
    int64_t steps = P0 > P ? (P0 - P + N - 1) / N : 0;
    Tw = order + steps * N;
    WindowSpace w = window_space(N, spec.k, P);
    forms = echelonize(impose_vanishing(window_series(w, Tw), allowed));
    if (steps == 0) break;
    bool covered = true;
    for (int64_t r = 0; r < N && covered; ++r) {
      if (!allowed(r)) continue;
      bool hit = false;
      for (int64_t m = -P; m < -P + N; ++m)
        if (mod(m, N) == r && forms.count(m)) hit = true;
      covered = hit;
    }
    if (covered) break;
    if (P >= 4 * N) throw MathInconsistency("window does not reach every allowed residue class");
    P += N;
  }

  if (P0 > P) {
    int64_t ordj = (Tw - min_exp) / N + 2;
    FracQSeries J = rescale(j_invariant(ordj), N);
    for (int64_t m = -P - 1; m >= min_exp; --m) {
      if (!allowed(m)) continue;
      auto base = forms.find(m + N);
      if (base == forms.end())
        throw MathInconsistency("ladder gap: no form with leading exponent " + std::to_string(m + N));
      int64_t depth = (-P - m + N - 1) / N;
      FracQSeries g = mul(J, base->second).truncated(Tw - depth * N);
      auto it = g.terms().upper_bound(m);
      while (it != g.terms().end()) {
        int64_t e = it->first;
        auto f = forms.find(e);
        if (f != forms.end()) {
          g = sub(g, f->second.scaled(it->second));
          it = g.terms().upper_bound(e);
        } else {
          ++it;
        }
      }
      if (g.valuation() != m) throw MathInconsistency("ladder lost its leading term at " + std::to_string(m));
      forms[m] = g.scaled(1 / g.coeff(m));
    }
  }

  ReducedBasis b;
  b.spec = spec;
  b.min_exp = min_exp;
  b.order = order;
  for (auto& [m, f] : forms) {
    if (m < min_exp || m >= order) continue;
    if (spec.kind == SpaceKind::holomorphic && m < 0) continue;
    if (spec.kind == SpaceKind::cuspidal && m <= 0) continue;
    b.forms.emplace(m, f.truncated(order).scaled(1 / s_of(spec.D, m)));
  }
  for (auto& [m, f] : b.forms) {
    if (f.trunc() != order) throw InsufficientOrder("form f_" + std::to_string(m) + " lost precision");
    for (auto& [e, c] : f.terms()) {
      if (!allowed(e))
        throw MathInconsistency("f_" + std::to_string(m) + " violates the eps-condition at q^" + std::to_string(e));
      if (e != m && b.forms.count(e))
        throw MathInconsistency("f_" + std::to_string(m) + " is not reduced at q^" + std::to_string(e));
    }
  }
  int64_t lo = spec.kind == SpaceKind::cuspidal ? 1 : min_exp;
  for (int64_t m = lo; m < order; ++m) {
    if (!allowed(m)) continue;
    (b.forms.count(m) ? b.exists : b.obstructed).push_back(m);
  }
  return b;
}

ReducedBasis build_basis(const EpsilonSpaceSpec& spec, int64_t min_exp, int64_t order) {
  return build_weak_basis(spec, min_exp, order);
}

std::vector<int64_t> dual_holomorphic_leads(const EpsilonSpaceSpec& spec, int64_t order) {
  Rational k2 = 2 - spec.k;
  EpsilonSpaceSpec ds = make_space(dual(spec.D), k2, SpaceKind::holomorphic);
  ReducedBasis b = build_weak_basis(ds, 0, std::max(order, elimination_bound(ds, 0)));
  return b.exists;
}

bool existence(const EpsilonSpaceSpec& spec, int64_t m) {
  if (!allowed_exponent(spec, m)) return false;
  int64_t mn = std::min<int64_t>(m, 0);
  EpsilonSpaceSpec weak = spec;
  weak.kind = SpaceKind::weak;
  int64_t order = std::max(elimination_bound(weak, mn), int64_t(std::abs(m) + 16));
  bool found = build_weak_basis(weak, mn, order).has(m);
  if (m <= 0 && 2 - spec.k > 0) {
    auto bstar = dual_holomorphic_leads(spec, int64_t(std::abs(m) + 16));
    bool obstructed = std::find(bstar.begin(), bstar.end(), -m) != bstar.end();
    if (found == obstructed)
      throw MathInconsistency("existence of f_" + std::to_string(m) + " disagrees with the dual obstruction");
  }
  return found;
}

namespace {

// h(D0) / (w(D0)/2) for a fundamental discriminant D0 < 0.
Rational weighted_class_number_fundamental(int64_t D0) {
  int64_t a = -D0;
  Rational s = 0;
  for (int64_t x = 1; x < a; ++x) s += kronecker(D0, x) * x;
  return -s / a;
}

}  // namespace

Rational hurwitz(int64_t n) {
  if (n < 0) throw std::invalid_argument("hurwitz: negative argument");
  if (n == 0) return make_rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return 0;
  // -n = D0 * F^2 with D0 fundamental.
  int64_t sf = -1;
  int64_t F2 = 1;
  for (auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) F2 *= p * p;
    if (e % 2) sf *= p;
  }
  int64_t D0 = sf;
  if (mod(sf, 4) != 1) {
    D0 = 4 * sf;
    F2 /= 4;
  }
  int64_t F = isqrt(F2);
  Rational total = 0;
  for (int64_t f : divisors(F)) {
    Rational term = f;
    for (int64_t p : prime_divisors(f)) term *= 1 - make_rational(kronecker(D0, p), p);
    total += term;
  }
  return weighted_class_number_fundamental(D0) * total;
}

std::vector<Rational> hurwitz_table(int64_t n_max) {
  std::vector<Rational> out;
  for (int64_t n = 0; n <= n_max; ++n) out.push_back(hurwitz(n));
  return out;
}

FracQSeries eisenstein_G(int64_t order) {
  if (order < 1) throw std::invalid_argument("eisenstein_G: order must be positive");
  FracQSeries g(1, order);
  for (int64_t n = 0; n < order; ++n) g.set(n, hurwitz(n));
  return g;
}

FracQSeries eisenstein_G_epsilon(const DiscriminantForm& D, int64_t order) {
  int64_t N = D.level();
  if (!is_supported_level(N)) throw UnsupportedLevel("unsupported level " + std::to_string(N));
  EpsilonData es = epsilon_vector(dual(D));
  int64_t work = std::max<int64_t>(order, 4 * gamma0_index(N));
  auto seeds = seed_forms(N, make_rational(3, 2), work);
  FracQSeries G = eisenstein_G(work);
  size_t ns = seeds.size();
  // Rows [g_1(n) .. g_s(n) | G(n)] over forbidden n.
  std::vector<std::vector<Rational>> rows;
  for (int64_t n = 0; n < work; ++n) {
    if (represents_norm(es, n)) continue;
    std::vector<Rational> row(ns + 1);
    bool any = false;
    for (size_t i = 0; i < ns; ++i) {
      row[i] = seeds[i].coeff(n);
      any = any || row[i] != 0;
    }
    row[ns] = G.coeff(n);
    if (any || row[ns] != 0) rows.push_back(std::move(row));
  }
  size_t rank = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c <= ns && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    if (c == ns) throw MathInconsistency("G has no eps*-projection within the holomorphic span");
    std::swap(rows[rank], rows[piv]);
    Rational f = 1 / rows[rank][c];
    for (auto& x : rows[rank]) x *= f;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rational g = rows[i][c];
      for (size_t j = 0; j <= ns; ++j) rows[i][j] -= g * rows[rank][j];
    }
    pivcol.push_back(c);
    ++rank;
  }
  if (rank != ns) throw MathInconsistency("eps*-projection of G is not unique within the holomorphic span");
  FracQSeries out = G;
  for (size_t i = 0; i < ns; ++i) out = sub(out, seeds[pivcol[i]].scaled(rows[i][ns]));
  return out.truncated(order);
}

size_t DualityReport::violations() const {
  return static_cast<size_t>(std::count_if(entries.begin(), entries.end(), [](auto& e) { return !e.ok(); }));
}

DualityReport duality_check(const ReducedBasis& A, const ReducedBasis& B, int64_t range) {
  DualityReport rep;
  for (auto& [m, f] : A.forms) {
    if (m > 0 || (range >= 0 && -m > range)) continue;
    for (auto& [d, g] : B.forms) {
      if (d > 0 || (range >= 0 && -d > range)) continue;
      if (!f.known(-d) || !g.known(-m)) continue;
      rep.entries.push_back({m, d, f.coeff(-d), g.coeff(-m)});
    }
  }
  if (rep.entries.empty()) throw InsufficientOrder("no comparable (m, d) pairs within truncation");
  return rep;
}

Rational residue_pairing(const DiscriminantForm& D, const FracQSeries& f, const FracQSeries& g) {
  if (f.denom() != 1 || g.denom() != 1) throw std::invalid_argument("residue_pairing: integral exponents only");
  if (f.is_zero() || g.is_zero()) return 0;
  int64_t m = *f.valuation(), d = *g.valuation();
  if (!f.known(-d) || !g.known(-m)) throw InsufficientOrder("residue pairing window exceeds truncation");
  Rational s = 0;
  for (int64_t n = m; n <= -d; ++n) {
    Rational a = f.coeff(n);
    if (a == 0) continue;
    Rational b = g.coeff(-n);
    if (b != 0) s += s_of(D, n) * a * b;
  }
  return s;
}

}  // namespace weilform
