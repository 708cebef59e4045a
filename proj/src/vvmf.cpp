#include "weilform/vvmf.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "weilform/errors.h"

namespace weilform {

namespace {

int64_t odd_level_part(const DiscriminantForm& D) {
  int64_t N = D.level();
  return N % 4 == 0 ? N / 4 : N;
}

// (M/(M,n)) / |D_{M/(M,n)}|
Rational coprime_factor(const DiscriminantForm& D, int64_t n) {
  int64_t M = odd_level_part(D);
  int64_t g = n == 0 ? M : std::gcd(M, std::abs(n));
  int64_t m = M / g;
  int64_t dm = 1;
  for (int64_t p : m > 1 ? prime_divisors(m) : std::vector<int64_t>{})
    for (auto& c : D.components_at(p)) dm *= c.order();
  return make_rational(m, dm);
}

}  // namespace

VectorForm psi(const DiscriminantForm& D, const FracQSeries& f0, const Rational& k) {
  EpsilonData e = epsilon_vector(D);
  if (mod(Rational(2 * k).get_num().get_si() - D.signature(), 4) != 0 || Rational(2 * k).get_den() != 1)
    throw std::invalid_argument("psi: weight incompatible with signature");
  FracQSeries f = f0.normalized();
  if (f.denom() != 1) throw std::invalid_argument("psi: input must have integral exponents");
  VectorForm F;
  F.D = D;
  F.classes = norm_classes(D);
  F.weight = k;
  const int64_t N = e.N;
  F.components.assign(F.classes.size(), FracQSeries(N, f.is_exact() ? FracQSeries::kExact : f.trunc()));
  for (auto& [n, a] : f.terms()) {
    if (!represents_norm(e, n))
      throw std::invalid_argument("psi: input violates the eps-condition at q^" + std::to_string(n));
    size_t c = F.classes.find(make_rational(n, N));
    F.components[c].set(n, s_of(D, n) * coprime_factor(D, n) * a);
  }
  return F;
}

FracQSeries phi(const VectorForm& F) {
  const int64_t N = F.D.level();
  FracQSeries acc(1);
  bool first = true;
  for (size_t c = 0; c < F.components.size(); ++c) {
    FracQSeries part = rescale(F.components[c], N).scaled(F.classes.class_size[c]);
    acc = first ? part : add(acc, part);
    first = false;
  }
  return acc.scaled(1 / s_of(F.D, 0)).normalized();
}

bool check_T(const VectorForm& F) {
  for (size_t c = 0; c < F.components.size(); ++c) {
    const auto& s = F.components[c];
    for (auto& [e, a] : s.terms())
      if (frac_part(make_rational(e, s.denom())) != F.classes.class_norm[c]) return false;
  }
  return true;
}

std::vector<std::complex<double>> evaluate(const VectorForm& F, const FiniteQuadraticModule& m,
                                           std::complex<double> tau, int64_t num_terms) {
  std::vector<std::complex<double>> vals(F.components.size());
  for (size_t c = 0; c < F.components.size(); ++c) {
    const auto& s = F.components[c];
    std::complex<double> acc = 0;
    int64_t count = 0;
    for (auto& [e, a] : s.terms()) {
      if (count++ >= num_terms) break;
      double x = static_cast<double>(e) / static_cast<double>(s.denom());
      acc += a.get_d() * std::exp(std::complex<double>(0, 2 * M_PI * x) * tau);
    }
    vals[c] = acc;
  }
  std::vector<std::complex<double>> out(static_cast<size_t>(m.size()));
  for (int64_t i = 0; i < m.size(); ++i) out[static_cast<size_t>(i)] = vals[F.classes.class_of[static_cast<size_t>(i)]];
  return out;
}

CheckSResult check_S(const WeilRep& W, const VectorForm& F, int64_t num_terms,
                     const std::vector<std::complex<double>>& pts) {
  CheckSResult res;
  for (auto& s : F.components)
    if (!s.is_exact() && static_cast<int64_t>(s.terms().size()) < num_terms / 4) res.truncation_warning = true;
  const double k = F.weight.get_d();
  for (auto tau : pts) {
    if (tau.imag() <= 0) throw std::invalid_argument("check_S: sample point not in the upper half-plane");
    auto lhs = evaluate(F, W.module(), -1.0 / tau, num_terms);
    std::complex<double> factor = std::exp(-k * std::log(tau));  // principal branch
    auto rhs_in = evaluate(F, W.module(), tau, num_terms);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(rhs_in.size()));
    for (size_t i = 0; i < rhs_in.size(); ++i) v(static_cast<Eigen::Index>(i)) = rhs_in[i];
    Eigen::VectorXcd rhs = W.mat_S() * v;
    for (size_t i = 0; i < lhs.size(); ++i)
      res.residual = std::max(res.residual, std::abs(factor * lhs[i] - rhs(static_cast<Eigen::Index>(i))));
  }
  return res;
}

CheckSResult check_S(const VectorForm& F, int64_t num_terms, const std::vector<std::complex<double>>& pts) {
  return check_S(WeilRep(F.D), F, num_terms, pts);
}

bool component_zero_determines(const VectorForm& F) {
  size_t zero = F.classes.find(0);
  if (!F.components[zero].is_zero()) return true;
  for (auto& s : F.components)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace weilform
