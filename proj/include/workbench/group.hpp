#pragma once

#include "workbench/numeric.hpp"

#include <vector>

namespace workbench {

// A finite group given by its Cayley table. Elements are the indices
// 0..order-1; the table is validated on construction.
class FiniteGroup {
 public:
  // Throws InputError if the table is not square, has out-of-range
  // entries, or violates associativity, identity or inverses.
  static FiniteGroup from_cayley(const std::vector<std::vector<Index>>& rows);

  static FiniteGroup cyclic(Index n);
  // S_n on {0..n-1}, elements in lexicographic order of their one-line
  // notation (element 0 is the identity); product is composition
  // (sigma * tau)(i) = sigma(tau(i)).
  static FiniteGroup symmetric(Index n);

  Index order() const noexcept { return order_; }
  Index identity() const noexcept { return identity_; }
  Index multiply(Index a, Index b) const { return table_[a * order_ + b]; }
  Index inverse(Index a) const { return inverse_[a]; }
  std::vector<std::vector<Index>> rows() const;

  bool operator==(const FiniteGroup&) const = default;

 private:
  FiniteGroup(Index order, std::vector<Index> table);

  Index order_ = 0;
  Index identity_ = 0;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
};

// Permutation sign of the elements of FiniteGroup::symmetric(n), in the
// same order: +1 for even, -1 for odd.
std::vector<int> symmetric_group_signs(Index n);

}  // namespace workbench
