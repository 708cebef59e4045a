#include "weilform/discriminant.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace weilform {

namespace {

bool is_prime_power_of(int64_t q, int64_t p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_square_power(int64_t q, int64_t p) {
  int f = 0;
  while (q > 1) q /= p, ++f;
  return f % 2 == 0;
}

}  // namespace

JordanComponent JordanComponent::odd_prime(int64_t q, int rank, int sign) {
  auto f = factorize(q);
  if (f.size() != 1 || f[0].first == 2) throw std::invalid_argument("odd_prime: q must be an odd prime power");
  JordanComponent c{f[0].first, q, rank, sign, 0, false};
  c.validate();
  return c;
}

JordanComponent JordanComponent::two_adic_odd(int64_t q, int rank, int sign, int t) {
  JordanComponent c{2, q, rank, sign, static_cast<int>(mod(t, 8)), true};
  c.validate();
  return c;
}

JordanComponent JordanComponent::two_adic_even(int64_t q, int rank, int sign) {
  JordanComponent c{2, q, rank, sign, 0, false};
  c.validate();
  return c;
}

std::vector<int> split_oddities(int rank, int sign, int t) {
  t = static_cast<int>(mod(t, 8));
  std::function<bool(int, int, int, std::vector<int>&)> go = [&](int r, int tt, int sg,
                                                                  std::vector<int>& acc) {
    if (r == 1) {
      if (tt % 2 == 1 && kronecker(2, tt) == sg) {
        acc.push_back(tt);
        return true;
      }
      return false;
    }
    // Beyond rank 4 every admissible (sign, t) pattern is realizable, so
    // peel off oddity 1 terms greedily to keep the search shallow.
    const int choices[4] = {1, 3, 5, 7};
    for (int ti : choices) {
      if (r > 4 && ti != 1) break;
      acc.push_back(ti);
      if (go(r - 1, static_cast<int>(mod(tt - ti, 8)), sg * kronecker(2, ti), acc)) return true;
      acc.pop_back();
    }
    return false;
  };
  std::vector<int> out;
  if (rank < 1 || !go(rank, t, sign, out))
    throw std::invalid_argument("no odd 2-adic component with rank " + std::to_string(rank) +
                                ", sign " + std::to_string(sign) + ", oddity " + std::to_string(t));
  return out;
}

void JordanComponent::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("Jordan component: p must be prime");
  if (!is_prime_power_of(q, p)) throw std::invalid_argument("Jordan component: q must be a power of p");
  if (rank < 1) throw std::invalid_argument("Jordan component: rank must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("Jordan component: sign must be ±1");
  if (p != 2) {
    if (odd || oddity_t != 0) throw std::invalid_argument("Jordan component: oddity only for p = 2");
    return;
  }
  if (!odd) {
    if (oddity_t != 0) throw std::invalid_argument("even 2-adic component carries no oddity");
    if (rank % 2 != 0) throw std::invalid_argument("even 2-adic component must have even rank");
    return;
  }
  if (oddity_t < 0 || oddity_t > 7) throw std::invalid_argument("oddity must be stored mod 8");
  if ((oddity_t - rank) % 2 != 0) throw std::invalid_argument("oddity must have the parity of the rank");
  split_oddities(rank, sign, oddity_t);
}

int64_t JordanComponent::order() const { return ipow(q, rank); }

int64_t JordanComponent::level() const { return (p == 2 && odd) ? 2 * q : q; }

int p_excess(const JordanComponent& c) {
  if (c.p == 2) throw std::invalid_argument("p_excess: use oddity for p = 2");
  int k = (!is_square_power(c.q, c.p) && c.sign == -1) ? 1 : 0;
  return static_cast<int>(mod(c.rank * (c.q - 1) + 4 * k, 8));
}

int oddity(const JordanComponent& c) {
  if (c.p != 2) throw std::invalid_argument("oddity: only defined for p = 2");
  int k = (!is_square_power(c.q, 2) && c.sign == -1) ? 1 : 0;
  return static_cast<int>(mod(c.oddity_t + 4 * k, 8));
}

DiscriminantForm::DiscriminantForm(std::vector<JordanComponent> components)
    : components_(std::move(components)) {
  for (auto& c : components_) c.validate();
  std::sort(components_.begin(), components_.end(), [](const JordanComponent& a, const JordanComponent& b) {
    return a.p != b.p ? a.p < b.p : a.q < b.q;
  });
  for (size_t i = 1; i < components_.size(); ++i)
    if (components_[i].q == components_[i - 1].q)
      throw std::invalid_argument("at most one Jordan component per prime power");
}

std::vector<JordanComponent> DiscriminantForm::components_at(int64_t p) const {
  std::vector<JordanComponent> out;
  for (auto& c : components_)
    if (c.p == p) out.push_back(c);
  return out;
}

std::vector<int64_t> DiscriminantForm::primes() const {
  std::vector<int64_t> out;
  for (auto& c : components_)
    if (out.empty() || out.back() != c.p) out.push_back(c.p);
  return out;
}

int64_t DiscriminantForm::order() const {
  int64_t n = 1;
  for (auto& c : components_) n *= c.order();
  return n;
}

int64_t DiscriminantForm::level() const {
  int64_t n = 1;
  for (auto& c : components_) n = std::lcm(n, c.level());
  return n;
}

int DiscriminantForm::signature() const {
  int s = 0;
  for (auto& c : components_) s += (c.p == 2) ? oddity(c) : -p_excess(c);
  return static_cast<int>(mod(s, 8));
}

int signature(const DiscriminantForm& D) { return D.signature(); }
int64_t level(const DiscriminantForm& D) { return D.level(); }

DiscriminantForm dual(const DiscriminantForm& D) {
  std::vector<JordanComponent> out;
  for (auto c : D.components()) {
    if (c.p != 2) {
      if (c.rank % 2 == 1) c.sign *= kronecker(-1, c.p);
    } else if (c.odd) {
      c.oddity_t = static_cast<int>(mod(-c.oddity_t, 8));
    }
    out.push_back(c);
  }
  return DiscriminantForm(out);
}

DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b) {
  std::vector<JordanComponent> all = a.components();
  for (auto& c : b.components()) {
    auto it = std::find_if(all.begin(), all.end(), [&](const JordanComponent& x) { return x.q == c.q; });
    if (it == all.end()) {
      all.push_back(c);
      continue;
    }
    JordanComponent m = *it;
    m.rank += c.rank;
    m.sign *= c.sign;
    if (m.p == 2) {
      m.oddity_t = static_cast<int>(mod(m.oddity_t + c.oddity_t, 8));
      m.odd = m.odd || c.odd;
    }
    *it = m;
  }
  return DiscriminantForm(all);
}

bool is_transitive(const DiscriminantForm& D) {
  for (int64_t p : D.primes()) {
    auto cs = D.components_at(p);
    if (p != 2) {
      if (cs.size() != 1 || cs[0].q != p) return false;
      const auto& c = cs[0];
      if (c.rank == 1) continue;
      if (c.rank == 2 && c.sign == (p % 4 == 3 ? 1 : -1)) continue;
      return false;
    }
    // 2-parts whose automorphism group is transitive on norm fibers; the
    // sign of an odd component is forced by its oddity, so both signs occur.
    auto matches_one = [](const JordanComponent& c) {
      if (c.q == 2 && c.odd) {
        if (c.rank == 1) return true;
        if (c.rank == 2) return c.oddity_t == 2 || c.oddity_t == 6;
        if (c.rank == 3) return c.sign == 1 ? (c.oddity_t == 3 || c.oddity_t == 5) : (c.oddity_t == 1 || c.oddity_t == 7);
        return false;
      }
      if (c.q == 2 && !c.odd) return c.rank == 2 && c.sign == -1;
      if (c.q == 4 && c.odd) return c.rank == 1;
      return false;
    };
    if (cs.size() == 1) {
      if (!matches_one(cs[0])) return false;
    } else if (cs.size() == 2) {
      const auto& small = cs[0];
      const auto& big = cs[1];
      bool ok = small.q == 2 && small.odd && small.rank == 1 && big.q == 4 && big.odd && big.rank == 1;
      if (!ok) return false;
    } else {
      return false;
    }
  }
  return true;
}

DiscriminantForm parse_genus(const std::string& s) {
  if (s == "1" || s.empty()) return DiscriminantForm();
  std::vector<JordanComponent> comps;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) {
    auto bad = [&]() { return std::invalid_argument("bad genus symbol component '" + part + "'"); };
    size_t caret = part.find('^');
    if (caret == std::string::npos || caret + 2 >= part.size()) throw bad();
    std::string head = part.substr(0, caret), tail = part.substr(caret + 1);
    int sign;
    if (tail[0] == '+')
      sign = 1;
    else if (tail[0] == '-')
      sign = -1;
    else
      throw bad();
    std::string rank_s = tail.substr(1);
    if (rank_s.empty() || !std::all_of(rank_s.begin(), rank_s.end(), ::isdigit)) throw bad();
    int rank = std::stoi(rank_s);
    size_t us = head.find('_');
    std::string q_s = head.substr(0, us);
    if (q_s.empty() || !std::all_of(q_s.begin(), q_s.end(), ::isdigit)) throw bad();
    int64_t q = std::stoll(q_s);
    auto f = q > 1 ? factorize(q) : std::vector<std::pair<int64_t, int>>{};
    if (f.size() != 1) throw bad();
    if (us != std::string::npos) {
      std::string t_s = head.substr(us + 1);
      if (f[0].first != 2 || t_s.empty() || !std::all_of(t_s.begin(), t_s.end(), ::isdigit)) throw bad();
      comps.push_back(JordanComponent::two_adic_odd(q, rank, sign, std::stoi(t_s)));
    } else if (f[0].first == 2) {
      comps.push_back(JordanComponent::two_adic_even(q, rank, sign));
    } else {
      comps.push_back(JordanComponent::odd_prime(q, rank, sign));
    }
  }
  return DiscriminantForm(comps);
}

std::string genus_symbol(const DiscriminantForm& D) {
  if (D.is_trivial()) return "1";
  std::string out;
  for (auto& c : D.components()) {
    if (!out.empty()) out += ".";
    out += std::to_string(c.q);
    if (c.odd) out += "_" + std::to_string(c.oddity_t);
    out += (c.sign > 0 ? "^+" : "^-") + std::to_string(c.rank);
  }
  return out;
}

std::string to_string(LocalChar c) {
  switch (c) {
    case LocalChar::trivial: return "trivial";
    case LocalChar::legendre: return "legendre";
    case LocalChar::minus4: return "(-4/.)";
    case LocalChar::plus8: return "(2/.)";
    case LocalChar::minus8: return "(-2/.)";
  }
  return "?";
}

int local_char_value(LocalChar c, int64_t p, int64_t d) {
  switch (c) {
    case LocalChar::trivial: return 1;
    case LocalChar::legendre: return kronecker(d, p);
    case LocalChar::minus4: return kronecker(-4, d);
    case LocalChar::plus8: return kronecker(8, d);
    case LocalChar::minus8: return kronecker(-8, d);
  }
  return 0;
}

int EpsilonData::chi_value(int64_t d) const {
  int v = 1;
  for (auto& [p, c] : chi) v *= local_char_value(c, p, d);
  return v;
}

EpsilonData character(const DiscriminantForm& D) {
  if (D.signature() % 2 == 0) throw std::invalid_argument("character: signature must be odd");
  if (!is_transitive(D)) throw std::invalid_argument("character: form must be transitive");
  EpsilonData e;
  e.N = D.level();
  e.M = e.N % 4 == 0 ? e.N / 4 : e.N;
  int64_t order = D.order();
  for (int64_t p : D.primes()) {
    if (p == 2) continue;
    e.chi[p] = (order % (p * p) == 0) ? LocalChar::trivial : LocalChar::legendre;
  }
  auto two = D.components_at(2);
  if (two.size() != 1 || !two[0].odd) throw std::invalid_argument("character: unsupported 2-part");
  bool plus = kronecker(-1, order) == 1;
  if (two[0].q == 2 && (two[0].rank == 1 || two[0].rank == 3))
    e.chi[2] = plus ? LocalChar::trivial : LocalChar::minus4;
  else if (two[0].q == 4 && two[0].rank == 1)
    e.chi[2] = plus ? LocalChar::plus8 : LocalChar::minus8;
  else
    throw std::invalid_argument("character: unsupported 2-part");
  return e;
}

EpsilonData epsilon_vector(const DiscriminantForm& D) {
  auto two = D.components_at(2);
  if (two.size() != 1 || two[0].q != 2 || !two[0].odd || two[0].rank != 1)
    throw std::invalid_argument("epsilon_vector: 2-part must be 2^{+1}_t");
  EpsilonData e = character(D);
  if (e.N % 4 != 0 || e.N % 8 == 0 || !is_squarefree(e.N / 4))
    throw std::invalid_argument("epsilon_vector: level must be 4M with M odd squarefree");
  int t_sign = (two[0].oddity_t % 4 == 1) ? 1 : -1;
  e.eps[2] = t_sign * kronecker(-1, e.N);
  for (auto& c : D.components()) {
    if (c.p == 2 || e.chi[c.p] == LocalChar::trivial) continue;
    e.eps[c.p] = local_char_value(e.chi[c.p], c.p, 2 * e.M / c.p) * c.sign;
  }
  return e;
}

bool represents_norm(const EpsilonData& e, int64_t n) {
  int64_t r = mod(n, 4);
  if (!(r == 0 || r == mod(e.eps.at(2), 4))) return false;
  for (auto& [p, s] : e.eps) {
    if (p == 2) continue;
    int v = kronecker(n, p);
    if (v != 0 && v != s) return false;
  }
  return true;
}

bool represents_norm(const DiscriminantForm& D, int64_t n) { return represents_norm(epsilon_vector(D), n); }

Rational s_of(const DiscriminantForm& D, int64_t n) {
  int64_t N = D.level();
  int64_t M = N % 4 == 0 ? N / 4 : N;
  int64_t g = std::gcd(M, std::abs(n));
  if (n == 0) g = M;
  Rational s = 1;
  for (int64_t p : prime_divisors(g)) {
    int64_t dp = 1;
    for (auto& c : D.components_at(p)) dp *= c.order();
    s *= 1 + make_rational(p, dp);
  }
  return s;
}

DiscriminantForm form_from_epsilon(int64_t N, const std::map<int64_t, int>& eps) {
  if (N % 4 != 0 || N % 8 == 0 || !is_squarefree(N / 4))
    throw std::invalid_argument("level must be 4M with M odd squarefree");
  int64_t M = N / 4;
  auto e2 = eps.find(2);
  if (e2 == eps.end()) throw std::invalid_argument("missing eps_2");
  int t = (e2->second * kronecker(-1, N) == 1) ? 1 : 7;
  std::vector<JordanComponent> comps{JordanComponent::two_adic_odd(2, 1, 1, t)};
  for (int64_t p : prime_divisors(M)) {
    auto ep = eps.find(p);
    if (ep == eps.end()) throw std::invalid_argument("missing eps_" + std::to_string(p));
    int delta = ep->second * kronecker(2 * M / p, p);
    comps.push_back(JordanComponent::odd_prime(p, 1, delta));
  }
  for (auto& [p, s] : eps)
    if (p != 2 && M % p != 0) throw std::invalid_argument("eps given for prime not dividing M");
  return DiscriminantForm(comps);
}

}  // namespace weilform
