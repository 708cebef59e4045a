// Weil representation matrices for the generators S, T, Z.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "weilform/finite_module.h"

namespace weilform {

using CMatrix = Eigen::MatrixXcd;

struct NormClassIndex {
  std::vector<Rational> class_norm;        // ascending in [0, 1)
  std::vector<int64_t> class_size;
  std::vector<std::vector<int64_t>> members;
  std::vector<size_t> class_of;            // element -> class
  size_t size() const { return class_norm.size(); }
  // Position of the class with the given norm mod 1; throws if absent.
  size_t find(const Rational& norm) const;
};

NormClassIndex norm_classes(const DiscriminantForm& D);
NormClassIndex norm_fibers(const FiniteQuadraticModule& m);

class WeilRep {
 public:
  explicit WeilRep(const DiscriminantForm& D);

  const DiscriminantForm& form() const { return D_; }
  const FiniteQuadraticModule& module() const { return module_; }
  int64_t dim() const { return module_.size(); }
  const CMatrix& mat_T() const { return T_; }
  const CMatrix& mat_S() const { return S_; }
  const CMatrix& mat_Z() const { return Z_; }
  CMatrix mat_T_inv() const;

 private:
  DiscriminantForm D_;
  FiniteQuadraticModule module_;
  CMatrix T_, S_, Z_;
};

enum class Gen { S, T, Tinv };
CMatrix rho_T(const WeilRep& W);
CMatrix rho_S(const WeilRep& W);
CMatrix rho_word(const WeilRep& W, const std::vector<Gen>& word);

struct RelationResiduals {
  double unitarity = 0;  // ||S S^* - I||
  double s2_z = 0;       // ||S^2 - Z||
  double st3_z = 0;      // ||(ST)^3 - Z||
  double z4_i = 0;       // ||Z^4 - I||
  double z2t = 0;        // ||Z^2 T - T Z^2||
  double z_perm = 0;     // deviation of Z from i^{-r} e_{-γ}
  double max() const;
};
RelationResiduals relation_residuals(const WeilRep& W);

double sup_norm(const CMatrix& m);

}  // namespace weilform
