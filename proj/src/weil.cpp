#include "weilform/weil.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace weilform {

namespace {

std::complex<double> e_of(double x) { return std::polar(1.0, 2 * M_PI * x); }

}  // namespace

size_t NormClassIndex::find(const Rational& norm) const {
  Rational n = frac_part(norm);
  for (size_t i = 0; i < class_norm.size(); ++i)
    if (class_norm[i] == n) return i;
  throw std::out_of_range("no norm class with norm " + n.get_str());
}

NormClassIndex norm_fibers(const FiniteQuadraticModule& m) {
  std::map<int64_t, std::vector<int64_t>> fibers;
  for (int64_t i = 0; i < m.size(); ++i) fibers[m.norm_num(i)].push_back(i);
  NormClassIndex idx;
  idx.class_of.resize(static_cast<size_t>(m.size()));
  for (auto& [n, members] : fibers) {
    for (int64_t i : members) idx.class_of[static_cast<size_t>(i)] = idx.class_norm.size();
    idx.class_norm.push_back(make_rational(n, m.level()));
    idx.class_size.push_back(static_cast<int64_t>(members.size()));
    idx.members.push_back(members);
  }
  return idx;
}

NormClassIndex norm_classes(const DiscriminantForm& D) {
  if (!is_transitive(D)) throw std::invalid_argument("norm_classes: form is not transitive");
  return norm_fibers(FiniteQuadraticModule(D));
}

WeilRep::WeilRep(const DiscriminantForm& D) : D_(D), module_(D) {
  const int64_t n = module_.size();
  const double N = static_cast<double>(module_.level());
  const int r = D.signature();
  T_ = CMatrix::Zero(n, n);
  S_ = CMatrix::Zero(n, n);
  for (int64_t i = 0; i < n; ++i) T_(i, i) = e_of(module_.norm_num(i) / N);
  std::complex<double> pre = e_of(-r / 8.0) / std::sqrt(static_cast<double>(n));
  for (int64_t b = 0; b < n; ++b)
    for (int64_t g = 0; g < n; ++g) S_(b, g) = pre * e_of(-module_.bilinear_num(b, g) / N);
  Z_ = S_ * S_;
}

CMatrix WeilRep::mat_T_inv() const { return T_.adjoint(); }

CMatrix rho_T(const WeilRep& W) { return W.mat_T(); }
CMatrix rho_S(const WeilRep& W) { return W.mat_S(); }

CMatrix rho_word(const WeilRep& W, const std::vector<Gen>& word) {
  if (word.empty()) throw std::invalid_argument("rho_word: empty word");
  CMatrix acc = CMatrix::Identity(W.dim(), W.dim());
  for (Gen g : word) {
    switch (g) {
      case Gen::S: acc = acc * W.mat_S(); break;
      case Gen::T: acc = acc * W.mat_T(); break;
      case Gen::Tinv: acc = acc * W.mat_T_inv(); break;
    }
  }
  return acc;
}

double sup_norm(const CMatrix& m) {
  double s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

double RelationResiduals::max() const {
  return std::max({unitarity, s2_z, st3_z, z4_i, z2t, z_perm});
}

RelationResiduals relation_residuals(const WeilRep& W) {
  const auto n = W.dim();
  CMatrix I = CMatrix::Identity(n, n);
  const CMatrix& S = W.mat_S();
  const CMatrix& T = W.mat_T();
  const CMatrix& Z = W.mat_Z();
  RelationResiduals r;
  r.unitarity = sup_norm(S * S.adjoint() - I);
  r.s2_z = sup_norm(S * S - Z);
  CMatrix st = S * T;
  r.st3_z = sup_norm(st * st * st - Z);
  CMatrix z2 = Z * Z;
  r.z4_i = sup_norm(z2 * z2 - I);
  r.z2t = sup_norm(z2 * T - T * z2);
  CMatrix expected = CMatrix::Zero(n, n);
  std::complex<double> ir = e_of(-W.form().signature() / 4.0);
  for (int64_t g = 0; g < n; ++g) expected(W.module().neg(g), g) = ir;
  r.z_perm = sup_norm(Z - expected);
  return r;
}

}  // namespace weilform
