#pragma once

#include <vector>

#include "flagctrl/root_system.hpp"
#include "flagctrl/sl/iwasawa.hpp"

namespace flagctrl::sl {

/// Block sizes of the partial flag selected by theta in type A_{d-1}:
/// simple root i (0-based) outside theta is a break between coordinates i and i+1.
std::vector<int> blocks_for(SimpleRootSet theta, int d);

/// Mask of the strictly-lower-block entries, i.e. the coordinates of n^-_theta.
Matrix lower_block_mask(const std::vector<int>& blocks);
Matrix lower_block(const Matrix& y, const std::vector<int>& blocks);

/// A point of a flag manifold of R^d, given by an orthogonal representative of
/// determinant +1 whose leading column blocks span the nested subspaces.
class FlagPoint {
 public:
  FlagPoint(Matrix rep, std::vector<int> blocks);

  /// Flag spanned by the leading column blocks of an invertible basis.
  static FlagPoint from_basis(const Matrix& basis, std::vector<int> blocks);
  static FlagPoint standard(int d, std::vector<int> blocks);

  const Matrix& rep() const { return rep_; }
  const std::vector<int>& blocks() const { return blocks_; }
  int dim() const { return static_cast<int>(rep_.rows()); }
  bool is_full() const { return static_cast<int>(blocks_.size()) == dim(); }

  /// psi . x
  FlagPoint moved(const Matrix& psi) const;

  /// Same flag manifold point described by rep * k; k must be block diagonal
  /// orthogonal for this block structure with det k = +1.
  FlagPoint right_multiplied(const Matrix& k) const;

  /// Max over the break points of the Frobenius distance of the orthogonal projectors.
  double distance(const FlagPoint& other) const;

 private:
  Matrix rep_;
  std::vector<int> blocks_;
};

/// Throws InputError unless k is block diagonal, orthogonal and of determinant +1.
void check_block_orthogonal(const Matrix& k, const std::vector<int>& blocks, double tol = 1e-10);

}  // namespace flagctrl::sl
