#pragma once

#include <vector>

#include "flagctrl/rational.hpp"
#include "flagctrl/root_system.hpp"
#include "flagctrl/sl/flag_point.hpp"
#include "flagctrl/weyl_group.hpp"

namespace flagctrl::sl {

/// Split part of a traceless X: real parts of the spectrum, grouped.
struct SplitPart {
  /// Descending real parts with multiplicity, equal within a group, sum 0.
  Vector h;
  /// Simple roots alpha_i with h_i = h_{i+1}.
  SimpleRootSet theta;
  /// Real eigenbasis, columns ordered like h. Complex pairs contribute (Re v, Im v).
  Matrix basis;
};

/// Gaps between sorted real parts at most 1e-9 max(1, |X|) are merged; gaps in
/// (that, gap_tol) are rejected as ambiguous. Non-diagonalizable X is rejected.
SplitPart split_part(const Matrix& x, double gap_tol = 1e-6);

/// Permutation pi of {0..d-1} with w(e_j) = e_{pi(j)} for a Weyl element of A_{d-1}.
std::vector<int> permutation_of(const WeylElement& w);

struct FixedFlag {
  FlagPoint point;
  /// Eigenbasis permuted by w; point is the flag of its leading blocks.
  Matrix frame;
  /// frame = point.rep() * r0, r0 upper triangular.
  Matrix r0;
};

/// The point w b_theta in the eigen-frame of X, a point of fix_theta(H, w).
/// For real spectrum it is fixed by exp(tX).
FixedFlag fixed_flags(const Matrix& x, SimpleRootSet theta, const WeylElement& w, double gap_tol = 1e-6);
FixedFlag fixed_flags(const SplitPart& split, SimpleRootSet theta, const WeylElement& w);

/// Coefficient vector c with sigma(H) = c . H on traceless diagonals, for sigma in
/// simple-root coordinates of A_{d-1} (alpha_i(H) = H_i - H_{i+1}).
Vector realize_functional(const RationalVector& sigma, int d);
/// Same, with an explicit root system; throws InputError unless it is of type A.
Vector realize_functional(const RootSystem& rs, const RationalVector& sigma);

/// Coroot-coordinate vector h mapped to the traceless diagonal sum_j h_j (e_j - e_{j+1}).
Vector realize_avector(const AVector& h);

}  // namespace flagctrl::sl
