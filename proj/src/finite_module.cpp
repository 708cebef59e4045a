#include "weilform/finite_module.h"

#include <stdexcept>

namespace weilform {

namespace {

struct Gen {
  int64_t order;
  int64_t diag;  // level * q(g)
};

}  // namespace

FiniteQuadraticModule::FiniteQuadraticModule(const DiscriminantForm& D) {
  level_ = D.level();
  const int64_t N = level_;
  std::vector<Gen> gens;
  std::vector<std::pair<size_t, size_t>> pairs;  // hyperbolic-type couplings
  std::vector<int64_t> pair_val;
  std::vector<int64_t> primes = D.primes();
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    int64_t p = primes[pi];
    int64_t bsize = 1;
    for (auto& c : D.components_at(p)) {
      bsize *= c.order();
      auto push = [&](int64_t order, int64_t diag) {
        gens.push_back({order, mod(diag, N)});
        prime_of_gen_.push_back(pi);
      };
      if (p != 2) {
        int64_t plus = 0, minus = 0;
        for (int64_t a = 1; a < p && (!plus || !minus); ++a) {
          int k = kronecker(2 * a, p);
          if (k == 1 && !plus) plus = a;
          if (k == -1 && !minus) minus = a;
        }
        for (int i = 0; i < c.rank; ++i) {
          int64_t a = (i + 1 < c.rank || c.sign == 1) ? plus : minus;
          push(c.q, a * (N / c.q));
        }
      } else if (c.odd) {
        for (int t : split_oddities(c.rank, c.sign, c.oddity_t)) push(c.q, t * (N / (2 * c.q)));
      } else {
        for (int b = 0; b < c.rank / 2; ++b) {
          bool anis = (b + 1 == c.rank / 2) && c.sign == -1;
          int64_t d = anis ? N / c.q : 0;
          push(c.q, d);
          push(c.q, d);
          pairs.emplace_back(gens.size() - 2, gens.size() - 1);
          pair_val.push_back(N / c.q);
        }
      }
    }
    block_sizes_.push_back(bsize);
  }
  size_t g = gens.size();
  for (auto& x : gens) {
    orders_.push_back(x.order);
    diag_.push_back(x.diag);
  }
  cross_.assign(g, std::vector<int64_t>(g, 0));
  for (size_t i = 0; i < pairs.size(); ++i) {
    cross_[pairs[i].first][pairs[i].second] = pair_val[i];
    cross_[pairs[i].second][pairs[i].first] = pair_val[i];
  }
  size_ = D.order();

  // CRT-ordered enumeration: element index i has p-block index i mod |D_p|,
  // decoded in mixed radix over that block's generators.
  coords_.resize(static_cast<size_t>(size_));
  norms_.resize(static_cast<size_t>(size_));
  for (int64_t i = 0; i < size_; ++i) {
    std::vector<int64_t> x(g, 0);
    std::vector<int64_t> rem(block_sizes_.size());
    for (size_t b = 0; b < block_sizes_.size(); ++b) rem[b] = i % block_sizes_[b];
    for (size_t j = 0; j < g; ++j) {
      size_t b = prime_of_gen_[j];
      x[j] = rem[b] % orders_[j];
      rem[b] /= orders_[j];
    }
    int64_t n = 0;
    for (size_t a = 0; a < g; ++a) {
      n = mod(n + diag_[a] * mod(x[a] * x[a], N), N);
      for (size_t b = a + 1; b < g; ++b)
        if (cross_[a][b]) n = mod(n + cross_[a][b] * mod(x[a] * x[b], N), N);
    }
    norms_[static_cast<size_t>(i)] = n;
    coords_[static_cast<size_t>(i)] = std::move(x);
  }
}

int64_t FiniteQuadraticModule::index_of(const std::vector<int64_t>& x) const {
  // Solve i ≡ r_b mod |D_b| for every prime block b.
  std::vector<int64_t> r(block_sizes_.size(), 0), radix(block_sizes_.size(), 1);
  for (size_t j = 0; j < x.size(); ++j) {
    size_t b = prime_of_gen_[j];
    r[b] += mod(x[j], orders_[j]) * radix[b];
    radix[b] *= orders_[j];
  }
  int64_t i = 0, m = 1;
  for (size_t b = 0; b < block_sizes_.size(); ++b) {
    while (mod(i, block_sizes_[b]) != r[b]) i += m;
    m *= block_sizes_[b];
  }
  return i;
}

int64_t FiniteQuadraticModule::neg(int64_t i) const {
  std::vector<int64_t> x = coords(i);
  for (auto& v : x) v = -v;
  return index_of(x);
}

int64_t FiniteQuadraticModule::add(int64_t a, int64_t b) const {
  std::vector<int64_t> x = coords(a);
  const auto& y = coords(b);
  for (size_t j = 0; j < x.size(); ++j) x[j] += y[j];
  return index_of(x);
}

int64_t FiniteQuadraticModule::bilinear_num(int64_t a, int64_t b) const {
  const auto& x = coords(a);
  const auto& y = coords(b);
  const int64_t N = level_;
  int64_t s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    s = mod(s + 2 * diag_[i] * mod(x[i] * y[i], N), N);
    for (size_t j = 0; j < x.size(); ++j)
      if (j != i && cross_[i][j]) s = mod(s + cross_[i][j] * mod(x[i] * y[j], N), N);
  }
  return s;
}

}  // namespace weilform
