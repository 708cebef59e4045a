// Scalar spaces A^ε(N, k, 1) of half-integral weight forms: reduced bases,
// Hurwitz class numbers and the ε*-projected Eisenstein series.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "weilform/discriminant.h"
#include "weilform/qseries.h"

namespace weilform {

enum class SpaceKind { weak, holomorphic, cuspidal };

struct EpsilonSpaceSpec {
  DiscriminantForm D;  // form whose ε-data defines the space
  EpsilonData eps;
  int64_t N = 0;
  Rational k;
  SpaceKind kind = SpaceKind::weak;
};

EpsilonSpaceSpec make_space(const DiscriminantForm& D, const Rational& k,
                            SpaceKind kind = SpaceKind::weak);
bool allowed_exponent(const EpsilonSpaceSpec& spec, int64_t n);

struct ReducedBasis {
  EpsilonSpaceSpec spec;
  int64_t min_exp = 0;
  int64_t order = 0;  // all forms are known through q^(order-1)
  std::map<int64_t, FracQSeries> forms;  // m -> f_m = q^m/s(m) + ...
  std::vector<int64_t> exists;
  std::vector<int64_t> obstructed;

  bool has(int64_t m) const { return forms.count(m) > 0; }
  const FracQSeries& form(int64_t m) const;
};

// RREF basis (leading coefficient 1) of M(N, k, 1) known through q^(order-1).
std::vector<FracQSeries> seed_forms(int64_t N, const Rational& k, int64_t order);

// Lowest admissible truncation for a basis with the given pole order.
int64_t elimination_bound(const EpsilonSpaceSpec& spec, int64_t min_exp);

ReducedBasis build_weak_basis(const EpsilonSpaceSpec& spec, int64_t min_exp, int64_t order);
ReducedBasis build_basis(const EpsilonSpaceSpec& spec, int64_t min_exp, int64_t order);

// Leading exponents of the holomorphic reduced basis of the dual space (weight 2 - k).
std::vector<int64_t> dual_holomorphic_leads(const EpsilonSpaceSpec& spec, int64_t order);

// Whether f_m exists; cross-checked against the dual obstruction criterion.
bool existence(const EpsilonSpaceSpec& spec, int64_t m);

Rational hurwitz(int64_t n);
std::vector<Rational> hurwitz_table(int64_t n_max);
FracQSeries eisenstein_G(int64_t order);
FracQSeries eisenstein_G_epsilon(const DiscriminantForm& D, int64_t order);

struct DualityEntry {
  int64_t m = 0;
  int64_t d = 0;
  Rational a;       // a_m(-d)
  Rational a_star;  // a*_d(-m)
  bool ok() const { return a == -a_star; }
};

struct DualityReport {
  std::vector<DualityEntry> entries;
  size_t violations() const;
};

// Pairs (m, d) with both forms present, both coefficients known and
// |m|, |d| <= range (range < 0 means unbounded).
DualityReport duality_check(const ReducedBasis& A, const ReducedBasis& B, int64_t range = -1);

// sum_n s(n) a(n) b(-n); throws InsufficientOrder if the window is not fully known.
Rational residue_pairing(const DiscriminantForm& D, const FracQSeries& f, const FracQSeries& g);

}  // namespace weilform
