// Explicit enumeration of the finite quadratic module of a Jordan decomposition.
#pragma once

#include <cstdint>
#include <vector>

#include "weilform/discriminant.h"

namespace weilform {

class FiniteQuadraticModule {
 public:
  explicit FiniteQuadraticModule(const DiscriminantForm& D);

  int64_t size() const { return size_; }
  int64_t level() const { return level_; }
  // Norm and bilinear values scaled by the level, reduced into [0, level).
  int64_t norm_num(int64_t i) const { return norms_[static_cast<size_t>(i)]; }
  int64_t bilinear_num(int64_t a, int64_t b) const;
  Rational norm(int64_t i) const { return make_rational(norm_num(i), level_); }
  int64_t neg(int64_t i) const;
  int64_t add(int64_t a, int64_t b) const;
  const std::vector<int64_t>& coords(int64_t i) const { return coords_[static_cast<size_t>(i)]; }
  const std::vector<int64_t>& generator_orders() const { return orders_; }
  int64_t index_of(const std::vector<int64_t>& coords) const;

 private:
  int64_t size_ = 1;
  int64_t level_ = 1;
  std::vector<int64_t> orders_;              // order of each cyclic generator
  std::vector<size_t> prime_of_gen_;         // which prime block a generator belongs to
  std::vector<int64_t> block_sizes_;         // |D_p| per prime block
  std::vector<int64_t> diag_;                // level * q(g_i)
  std::vector<std::vector<int64_t>> cross_;  // level * (g_i, g_j) for i != j
  std::vector<int64_t> norms_;
  std::vector<std::vector<int64_t>> coords_;
};

}  // namespace weilform
