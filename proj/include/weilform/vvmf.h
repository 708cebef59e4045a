// Vector-valued forms for ρ_D stored one series per norm class, and the
// explicit isomorphisms with scalar ε-spaces.
#pragma once

#include <complex>
#include <vector>

#include "weilform/qseries.h"
#include "weilform/weil.h"

namespace weilform {

struct VectorForm {
  DiscriminantForm D;
  NormClassIndex classes;
  std::vector<FracQSeries> components;  // aligned with classes.class_norm
  Rational weight;
};

VectorForm psi(const DiscriminantForm& D, const FracQSeries& f, const Rational& k);
FracQSeries phi(const VectorForm& F);

bool check_T(const VectorForm& F);

struct CheckSResult {
  double residual = 0;
  bool truncation_warning = false;
};
// max over sample points of |τ^{-k} F(-1/τ) - ρ(S) F(τ)|.
CheckSResult check_S(const VectorForm& F, int64_t num_terms,
                     const std::vector<std::complex<double>>& sample_points);
CheckSResult check_S(const WeilRep& W, const VectorForm& F, int64_t num_terms,
                     const std::vector<std::complex<double>>& sample_points);

// Evaluates every per-element component at τ (classes expanded to elements).
std::vector<std::complex<double>> evaluate(const VectorForm& F, const FiniteQuadraticModule& m,
                                           std::complex<double> tau, int64_t num_terms);

bool component_zero_determines(const VectorForm& F);

}  // namespace weilform
