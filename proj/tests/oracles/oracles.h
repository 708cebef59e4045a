// Brute-force references for the test suite. Everything here is computed from
// first principles (explicit group enumeration, lattice-point and reduced-form
// counts, direct products) and shares no algorithm with the library.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "weilform/arith.h"
#include "weilform/discriminant.h"

namespace oracle {

using weilform::Integer;
using weilform::Rational;

// A finite quadratic module given by cyclic generators g_i of order o_i with
// q(g_i) and (g_i, g_j); values are stored as numerators over `level`.
struct ExplicitModule {
  std::vector<int64_t> orders;
  int64_t level = 1;
  std::vector<int64_t> elem_norm;                 // level * q(x) mod level
  std::vector<std::vector<int64_t>> gen_bilinear; // level * (g_i, g_j) mod level
  std::vector<int64_t> gen_norm;                  // level * q(g_i) mod level

  int64_t size() const { return static_cast<int64_t>(elem_norm.size()); }
  std::vector<int64_t> coords(int64_t x) const;
  int64_t index(const std::vector<int64_t>& c) const;
  int64_t add(int64_t a, int64_t b) const;
  int64_t scale(int64_t a, int64_t k) const;
  int64_t bilinear(int64_t a, int64_t b) const;  // level * (a, b) mod level
  int64_t order_of(int64_t x) const;
  Rational norm(int64_t x) const { return weilform::make_rational(elem_norm[x], level); }
};

// Cyclic pieces with explicit rational norms and pairings.
ExplicitModule make_module(const std::vector<int64_t>& orders, const std::vector<Rational>& norms,
                           const std::vector<std::vector<Rational>>& cross);

// Builds the module from the textbook models of the Jordan components:
// q^{±1} = <γ>, q(γ) = a/q with (2a/p) = ±1; q_t^{±1} = <γ>, q(γ) = t/(2q);
// q^{+2}: hyperbolic plane over Z/q; q^{-2}: q(γ) = q(γ') = (γ, γ') = 1/q.
// Throws std::invalid_argument when no model exists.
ExplicitModule build(const weilform::DiscriminantForm& D);

std::map<Rational, int64_t> norm_census(const ExplicitModule& m);

// Signature mod 8 read off the Gauss sum sum e(q(γ)) = sqrt|D| e(r/8).
int gauss_signature(const ExplicitModule& m);
std::complex<double> gauss_sum(const ExplicitModule& m, int sign);  // sum e(sign*q(γ))

// Orbit id per element under the full automorphism group, by enumerating
// isometric images of the generators.
std::vector<int64_t> aut_orbits(const ExplicitModule& m);
bool transitive(const ExplicitModule& m);
bool anisotropic(const ExplicitModule& m);

// Weighted count of reduced positive-definite forms of discriminant disc < 0.
Rational bqf_class_count(int64_t disc);
int64_t r2(int64_t n);  // #{(x, y) : x^2 + y^2 = n}
Integer sigma(int64_t n, int k);

// Coefficients of prod_{n>=1} (1 - q^{scale n})^power through q^(len-1).
std::vector<Integer> euler_product(int64_t scale, int64_t power, int64_t len);
// Coefficients of the product of power series a, b through q^(len-1).
std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b, int64_t len);

// Every Jordan decomposition with one component per prime power and |D| <= max_order.
std::vector<weilform::DiscriminantForm> enumerate_forms(int64_t max_order);

int legendre(int64_t a, int64_t p);  // Euler's criterion

}  // namespace oracle
