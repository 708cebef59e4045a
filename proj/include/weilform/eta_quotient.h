// Eta quotients on Γ0(N) and the weight-k spaces θ^{2k}·(units with bounded poles)
// used to generate scalar modular forms at genus-zero levels.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "weilform/qseries.h"

namespace weilform {

using EtaExponents = std::map<int64_t, int64_t>;  // d -> r_d

Rational eta_weight(const EtaExponents& r);
Rational eta_leading_exponent(const EtaExponents& r);
// Order of prod η(δτ)^{r_δ} at the cusp 1/d of Γ0(N), in that cusp's local parameter.
Rational ligozat_order(int64_t N, int64_t d, const EtaExponents& r);
// prod η(δτ)^{r_δ} + O(q^trunc); denominator 24 unless the lead is integral.
FracQSeries eta_quotient_series(const EtaExponents& r, int64_t trunc);

// θ(τ) = η(2τ)^5 / (η(τ)^2 η(4τ)^2)
const EtaExponents& theta_exponents();

// Levels where every weight-k form needed here is θ^{2k} times a Hauptmodul
// polynomial: genus zero, no elliptic points, 4 | N.
bool is_supported_level(int64_t N);
const std::vector<int64_t>& supported_levels();

// Index [SL2(Z) : Γ0(N)].
int64_t gamma0_index(int64_t N);

struct WindowSpace {
  int64_t N = 0;
  Rational k;
  int64_t pole = 0;  // order of pole allowed at infinity
  int64_t dim = 0;
  std::vector<EtaExponents> generators;  // linearly independent eta quotients
};

// Weight-k forms (2k odd positive) on Γ0(N) with the theta multiplier whose
// pole at every cusp is bounded by `pole` scaled to that cusp's width.
WindowSpace window_space(int64_t N, const Rational& k, int64_t pole);
std::vector<FracQSeries> window_series(const WindowSpace& w, int64_t trunc);

}  // namespace weilform
