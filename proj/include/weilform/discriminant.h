// Finite quadratic modules described by Jordan components q^{±n}_t.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weilform/arith.h"

namespace weilform {

struct JordanComponent {
  int64_t p = 2;
  int64_t q = 2;      // p^f
  int rank = 1;
  int sign = 1;       // the ±1 in q^{±n}
  int oddity_t = 0;   // t mod 8 for odd 2-adic components, 0 otherwise
  bool odd = false;   // 2-adic type I (has an oddity); always false for odd p

  static JordanComponent odd_prime(int64_t q, int rank, int sign);
  static JordanComponent two_adic_odd(int64_t q, int rank, int sign, int t);
  static JordanComponent two_adic_even(int64_t q, int rank, int sign);

  void validate() const;  // throws std::invalid_argument
  int64_t order() const;
  int64_t level() const;
  bool operator==(const JordanComponent& o) const = default;
};

// Splits an odd 2-adic component into rank-one oddities t_i with
// prod (2/t_i) = sign and sum t_i = t mod 8; throws if impossible.
std::vector<int> split_oddities(int rank, int sign, int t);

int p_excess(const JordanComponent& c);
int oddity(const JordanComponent& c);

class DiscriminantForm {
 public:
  DiscriminantForm() = default;
  explicit DiscriminantForm(std::vector<JordanComponent> components);

  const std::vector<JordanComponent>& components() const { return components_; }
  std::vector<JordanComponent> components_at(int64_t p) const;
  std::vector<int64_t> primes() const;
  int64_t order() const;
  int64_t level() const;
  int signature() const;  // mod 8, in [0, 8)
  bool is_trivial() const { return components_.empty(); }

  bool operator==(const DiscriminantForm& o) const { return components_ == o.components_; }

 private:
  std::vector<JordanComponent> components_;
};

int signature(const DiscriminantForm& D);
int64_t level(const DiscriminantForm& D);
DiscriminantForm dual(const DiscriminantForm& D);
DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b);
bool is_transitive(const DiscriminantForm& D);

// "2_7^+1.3^-1"; the trivial form prints as "1".
DiscriminantForm parse_genus(const std::string& s);
std::string genus_symbol(const DiscriminantForm& D);

enum class LocalChar { trivial, legendre, minus4, plus8, minus8 };
std::string to_string(LocalChar c);
// Value of a local character at an integer d (0 if d shares the prime).
int local_char_value(LocalChar c, int64_t p, int64_t d);

struct EpsilonData {
  int64_t N = 4;
  int64_t M = 1;
  std::map<int64_t, LocalChar> chi;  // prime -> local type
  std::map<int64_t, int> eps;        // 2 and odd p | M with chi_p nontrivial
  int chi_value(int64_t d) const;
  bool operator==(const EpsilonData& o) const = default;
};

// Character chi of a transitive form of odd signature; eps left empty.
EpsilonData character(const DiscriminantForm& D);
// Full (N, chi, eps) data; requires D_2 = 2^{+1}_t and squarefree odd part of level.
EpsilonData epsilon_vector(const DiscriminantForm& D);

bool represents_norm(const DiscriminantForm& D, int64_t n);
bool represents_norm(const EpsilonData& e, int64_t n);
Rational s_of(const DiscriminantForm& D, int64_t n);

// The form with D_2 = 2^{+1}_t and D_p = p^{δ_p} for odd p | M realizing
// level N = 4M and the given sign vector eps (keys 2 and odd p | M).
DiscriminantForm form_from_epsilon(int64_t N, const std::map<int64_t, int>& eps);

}  // namespace weilform
