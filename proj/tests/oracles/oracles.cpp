#include "oracles.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

int64_t md(int64_t a, int64_t n) { return ((a % n) + n) % n; }

int64_t num_over(const Rational& r, int64_t level) {
  Rational s = r * level;
  if (s.get_den() != 1) throw std::logic_error("level does not clear denominators");
  Integer v = s.get_num() % level;
  return md(v.get_si(), level);
}

// t_1..t_n in {1,3,5,7} with prod (2/t_i) = sign and sum t_i = t mod 8.
bool find_oddities(int n, int sign, int t, std::vector<int>& out) {
  out.assign(n, 1);
  std::function<bool(int, int, int)> rec = [&](int i, int s, int sum) {
    if (i == n) return s == sign && md(sum - t, 8) == 0;
    for (int ti : {1, 3, 5, 7}) {
      out[i] = ti;
      int chi = (ti == 1 || ti == 7) ? 1 : -1;
      if (rec(i + 1, s * chi, sum + ti)) return true;
    }
    return false;
  };
  return rec(0, 1, 0);
}

}  // namespace

int legendre(int64_t a, int64_t p) {
  a = md(a, p);
  if (a == 0) return 0;
  int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

std::vector<int64_t> ExplicitModule::coords(int64_t x) const {
  std::vector<int64_t> c(orders.size());
  for (size_t i = orders.size(); i-- > 0;) {
    c[i] = x % orders[i];
    x /= orders[i];
  }
  return c;
}

int64_t ExplicitModule::index(const std::vector<int64_t>& c) const {
  int64_t x = 0;
  for (size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + md(c[i], orders[i]);
  return x;
}

int64_t ExplicitModule::add(int64_t a, int64_t b) const {
  auto ca = coords(a), cb = coords(b);
  for (size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return index(ca);
}

int64_t ExplicitModule::scale(int64_t a, int64_t k) const {
  auto c = coords(a);
  for (auto& v : c) v *= k;
  return index(c);
}

int64_t ExplicitModule::bilinear(int64_t a, int64_t b) const {
  auto ca = coords(a), cb = coords(b);
  int64_t s = 0;
  for (size_t i = 0; i < ca.size(); ++i)
    for (size_t j = 0; j < cb.size(); ++j) s = md(s + ca[i] * cb[j] % level * gen_bilinear[i][j], level);
  return s;
}

int64_t ExplicitModule::order_of(int64_t x) const {
  int64_t k = 1, y = x;
  while (y != 0) {
    y = add(y, x);
    ++k;
  }
  return k;
}

ExplicitModule make_module(const std::vector<int64_t>& orders, const std::vector<Rational>& norms,
                           const std::vector<std::vector<Rational>>& cross) {
  ExplicitModule m;
  m.orders = orders;
  size_t n = orders.size();
  int64_t L = 1;
  for (auto& r : norms) L = std::lcm(L, r.get_den().get_si());
  for (auto& row : cross)
    for (auto& r : row) L = std::lcm(L, r.get_den().get_si());
  m.level = L;
  m.gen_norm.resize(n);
  m.gen_bilinear.assign(n, std::vector<int64_t>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    m.gen_norm[i] = num_over(norms[i], L);
    for (size_t j = 0; j < n; ++j)
      m.gen_bilinear[i][j] = i == j ? md(2 * m.gen_norm[i], L) : num_over(cross[i][j], L);
  }
  int64_t size = 1;
  for (auto o : orders) size *= o;
  m.elem_norm.resize(size);
  for (int64_t x = 0; x < size; ++x) {
    auto c = m.coords(x);
    int64_t s = 0;
    for (size_t i = 0; i < n; ++i) {
      s = md(s + c[i] * c[i] % L * m.gen_norm[i], L);
      for (size_t j = i + 1; j < n; ++j) s = md(s + c[i] * c[j] % L * m.gen_bilinear[i][j], L);
    }
    m.elem_norm[x] = s;
  }
  return m;
}

ExplicitModule build(const weilform::DiscriminantForm& D) {
  std::vector<int64_t> orders;
  std::vector<Rational> norms;
  std::vector<std::pair<size_t, size_t>> pairs;  // generator pairs with (g, g') = 1/q
  std::vector<int64_t> pair_q;
  for (const auto& c : D.components()) {
    if (c.p != 2) {
      int64_t a_plus = 0, a_minus = 0;
      for (int64_t a = 1; a < c.p && (!a_plus || !a_minus); ++a) {
        int l = legendre(2 * a, c.p);
        if (l == 1 && !a_plus) a_plus = a;
        if (l == -1 && !a_minus) a_minus = a;
      }
      for (int i = 0; i < c.rank; ++i) {
        orders.push_back(c.q);
        int64_t a = (i == c.rank - 1 && c.sign < 0) ? a_minus : a_plus;
        norms.push_back(weilform::make_rational(a, c.q));
      }
    } else if (!c.odd) {
      if (c.rank % 2) throw std::invalid_argument("even 2-adic component of odd rank");
      for (int i = 0; i < c.rank / 2; ++i) {
        bool neg = i == c.rank / 2 - 1 && c.sign < 0;
        size_t g = orders.size();
        for (int k = 0; k < 2; ++k) {
          orders.push_back(c.q);
          norms.push_back(neg ? weilform::make_rational(1, c.q) : Rational(0));
        }
        pairs.push_back({g, g + 1});
        pair_q.push_back(c.q);
      }
    } else {
      std::vector<int> ts;
      if (!find_oddities(c.rank, c.sign, c.oddity_t, ts)) throw std::invalid_argument("no odd 2-adic model");
      for (int t : ts) {
        orders.push_back(c.q);
        norms.push_back(weilform::make_rational(t, 2 * c.q));
      }
    }
  }
  std::vector<std::vector<Rational>> cross(orders.size(), std::vector<Rational>(orders.size(), 0));
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    cross[a][b] = cross[b][a] = weilform::make_rational(1, pair_q[i]);
  }
  return make_module(orders, norms, cross);
}

std::map<Rational, int64_t> norm_census(const ExplicitModule& m) {
  std::map<Rational, int64_t> out;
  for (int64_t x = 0; x < m.size(); ++x) ++out[m.norm(x)];
  return out;
}

std::complex<double> gauss_sum(const ExplicitModule& m, int sign) {
  std::complex<double> s = 0;
  for (int64_t x = 0; x < m.size(); ++x)
    s += std::polar(1.0, sign * 2 * M_PI * static_cast<double>(m.elem_norm[x]) / static_cast<double>(m.level));
  return s;
}

int gauss_signature(const ExplicitModule& m) {
  std::complex<double> s = gauss_sum(m, 1) / std::sqrt(static_cast<double>(m.size()));
  if (std::abs(std::abs(s) - 1) > 1e-9) throw std::logic_error("degenerate module");
  double r = std::arg(s) / (2 * M_PI) * 8;
  return static_cast<int>(md(std::llround(r), 8));
}

std::vector<int64_t> aut_orbits(const ExplicitModule& m) {
  int64_t n = m.size();
  size_t g = m.orders.size();
  std::vector<int64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int64_t(int64_t)> find = [&](int64_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int64_t components = n;
  std::set<int64_t> distinct_norms(m.elem_norm.begin(), m.elem_norm.end());
  auto target = static_cast<int64_t>(distinct_norms.size());

  std::vector<int64_t> ord(n);
  for (int64_t x = 0; x < n; ++x) ord[x] = m.order_of(x);
  std::vector<std::vector<int64_t>> cand(g);
  for (size_t i = 0; i < g; ++i)
    for (int64_t y = 0; y < n; ++y)
      if (m.orders[i] % ord[y] == 0 && m.elem_norm[y] == m.gen_norm[i]) cand[i].push_back(y);

  std::vector<int64_t> img(g);
  std::vector<std::vector<int64_t>> coords(n);
  for (int64_t x = 0; x < n; ++x) coords[x] = m.coords(x);
  bool done = false;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (done) return;
    if (i == g) {
      for (int64_t x = 0; x < n; ++x) {
        int64_t y = 0;
        for (size_t k = 0; k < g; ++k)
          if (coords[x][k]) y = m.add(y, m.scale(img[k], coords[x][k]));
        int64_t a = find(x), b = find(y);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
      if (components == target) done = true;
      return;
    }
    for (int64_t y : cand[i]) {
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) ok = m.bilinear(y, img[j]) == m.gen_bilinear[i][j];
      if (!ok) continue;
      img[i] = y;
      rec(i + 1);
      if (done) return;
    }
  };
  rec(0);
  std::vector<int64_t> out(n);
  for (int64_t x = 0; x < n; ++x) out[x] = find(x);
  return out;
}

bool transitive(const ExplicitModule& m) {
  auto orb = aut_orbits(m);
  std::map<int64_t, int64_t> rep;  // norm -> orbit
  for (int64_t x = 0; x < m.size(); ++x) {
    auto [it, fresh] = rep.emplace(m.elem_norm[x], orb[x]);
    if (!fresh && it->second != orb[x]) return false;
  }
  return true;
}

bool anisotropic(const ExplicitModule& m) {
  for (int64_t x = 1; x < m.size(); ++x)
    if (m.elem_norm[x] == 0) return false;
  return true;
}

Rational bqf_class_count(int64_t disc) {
  if (disc >= 0 || md(disc, 4) > 1) throw std::invalid_argument("bqf_class_count: need disc < 0, disc = 0,1 mod 4");
  int64_t D = -disc;
  Rational h = 0;
  for (int64_t a = 1; 3 * a * a <= D; ++a)
    for (int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + D) % (4 * a)) continue;
      int64_t c = (b * b + D) / (4 * a);
      if (c < a || (b < 0 && a == c)) continue;
      if (b == 0 && a == c)
        h += Rational(1, 2);
      else if (b == a && a == c)
        h += Rational(1, 3);
      else
        h += 1;
    }
  h.canonicalize();
  return h;
}

int64_t r2(int64_t n) {
  int64_t count = 0;
  for (int64_t x = -n; x <= n; ++x)
    for (int64_t y = -n; y <= n; ++y)
      if (x * x + y * y == n) ++count;
  return count;
}

Integer sigma(int64_t n, int k) {
  Integer s = 0;
  for (int64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
      s += p;
    }
  return s;
}

std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b, int64_t len) {
  std::vector<Integer> c(len, 0);
  for (int64_t i = 0; i < len && i < static_cast<int64_t>(a.size()); ++i)
    for (int64_t j = 0; i + j < len && j < static_cast<int64_t>(b.size()); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<Integer> euler_product(int64_t scale, int64_t power, int64_t len) {
  std::vector<Integer> c(len, 0);
  c[0] = 1;
  for (int64_t n = 1; n * scale < len; ++n)
    for (int64_t p = 0; p < power; ++p)
      for (int64_t i = len - 1; i >= n * scale; --i) c[i] -= c[i - n * scale];
  return c;
}

std::vector<weilform::DiscriminantForm> enumerate_forms(int64_t max_order) {
  using weilform::JordanComponent;
  // local options per prime: (components, order)
  auto local = [&](int64_t p) {
    std::vector<std::pair<std::vector<JordanComponent>, int64_t>> out{{{}, 1}};
    std::vector<int64_t> qs;
    for (int64_t q = p; q <= max_order; q *= p) qs.push_back(q);
    std::function<void(size_t, std::vector<JordanComponent>&, int64_t)> rec =
        [&](size_t i, std::vector<JordanComponent>& cur, int64_t order) {
          if (i == qs.size()) {
            if (!cur.empty()) out.push_back({cur, order});
            return;
          }
          rec(i + 1, cur, order);
          int64_t q = qs[i], o = order;
          for (int n = 1; o * q <= max_order; ++n) {
            o *= q;
            std::vector<JordanComponent> opts;
            for (int s : {1, -1}) {
              JordanComponent c;
              c.p = p;
              c.q = q;
              c.rank = n;
              c.sign = s;
              if (p != 2) {
                opts.push_back(c);
                continue;
              }
              if (n % 2 == 0) opts.push_back(c);
              c.odd = true;
              std::vector<int> ts;
              for (int t = 0; t < 8; ++t)
                if (find_oddities(n, s, t, ts)) {
                  c.oddity_t = t;
                  opts.push_back(c);
                }
            }
            for (auto& c : opts) {
              cur.push_back(c);
              rec(i + 1, cur, o);
              cur.pop_back();
            }
          }
        };
    std::vector<JordanComponent> cur;
    rec(0, cur, 1);
    return out;
  };
  std::vector<int64_t> primes;
  for (int64_t p = 2; p <= max_order; ++p) {
    bool prime = true;
    for (int64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
    if (prime) primes.push_back(p);
  }
  std::vector<std::pair<std::vector<JordanComponent>, int64_t>> acc{{{}, 1}};
  for (int64_t p : primes) {
    auto opts = local(p);
    std::vector<std::pair<std::vector<JordanComponent>, int64_t>> next;
    for (auto& [comps, o] : acc)
      for (auto& [lc, lo] : opts)
        if (o * lo <= max_order) {
          auto merged = comps;
          merged.insert(merged.end(), lc.begin(), lc.end());
          next.push_back({merged, o * lo});
        }
    acc = std::move(next);
  }
  std::vector<weilform::DiscriminantForm> forms;
  for (auto& [comps, o] : acc) forms.emplace_back(comps);
  return forms;
}

}  // namespace oracle
