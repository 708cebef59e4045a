// Borcherds products for O(2,1) attached to reduced forms of the ε-spaces.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weilform/discriminant.h"
#include "weilform/qseries.h"

namespace weilform {

enum class EtaMatchKind { exact, cofactor, none };
std::string to_string(EtaMatchKind k);

struct EtaMatch {
  EtaMatchKind kind = EtaMatchKind::none;
  std::map<int64_t, int64_t> exponents;  // d -> r_d (empty for none)
  FracQSeries cofactor;                  // lift / prod η(dτ)^{r_d} for kind cofactor
};

struct BorcherdsLift {
  int64_t group_level = 1;  // M: the product lives on Γ0(M)
  Rational weight;
  Rational weyl_rho;
  std::map<int64_t, Integer> exponents;  // n -> e_n = s(n^2) c(n^2)
  FracQSeries expansion;
  std::map<int64_t, Integer> divisors;   // discriminant -> order
  std::optional<EtaMatch> eta_match;
};

// -sum_{n >= 0} s(n) c(-n) H*(n); throws InsufficientOrder if hstar is too short.
Rational weyl_vector(const DiscriminantForm& D, const FracQSeries& f, const FracQSeries& hstar);

// Product known through q^(rho + order - 1); needs f known through q^((order-1)^2).
BorcherdsLift lift(const DiscriminantForm& D, const FracQSeries& f, int64_t order);
BorcherdsLift lift(const DiscriminantForm& D, const FracQSeries& f, int64_t order,
                   const FracQSeries& hstar);

// Orders sum_{n>=1} s(Δ n^2) c(Δ n^2) for each Δ < 0.
std::map<int64_t, Integer> cm_divisor_orders(const DiscriminantForm& D, const FracQSeries& f,
                                             const std::vector<int64_t>& discriminants);
// All CM discriminants Δ < 0 (Δ = 0, 1 mod 4) where the principal part of f contributes.
std::vector<int64_t> principal_discriminants(const FracQSeries& f);

EtaMatch eta_quotient_match(const BorcherdsLift& L, const std::vector<int64_t>& divisor_pool);
std::vector<int64_t> default_eta_pool(const DiscriminantForm& D);

}  // namespace weilform
