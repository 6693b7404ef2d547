#pragma once

#include <vector>

#include "flagctrl/root_system.hpp"
#include "flagctrl/sl/flag_point.hpp"
#include "flagctrl/sl/spectral.hpp"

namespace flagctrl::sl {

// Tangent vectors at a flag point x are strictly-lower-block matrices Y (the
// coordinates of n^-_theta), meaning the curve x.rep * exp(sY) * b_theta. The
// metric is the Frobenius one on these coordinates, which is K-invariant and
// proportional to the trace-form metric; the scalar cancels in every ratio used here.

/// Orthonormal basis of the sum of the root directions gamma at a fixed flag
/// (gamma taken in the eigen-frame of X, as produced by pi_sets for the element w).
std::vector<Matrix> tangent_basis(const FixedFlag& fixed, const WeylElement& w, const std::vector<Root>& roots);

/// |det| of d(psi) restricted to span(V), from the Gram determinant of the images.
/// V must be orthonormal and tangent at x; throws InputError otherwise.
double projective_derivative_det(const Matrix& psi, const FlagPoint& x, const std::vector<Matrix>& v);

/// Matrix of d(psi) on span(V) in the basis V, for psi fixing x (within 1e-6).
/// Images are brought back from the representative of psi.x to x.rep.
Matrix restricted_derivative(const Matrix& psi, const FlagPoint& x, const std::vector<Matrix>& v);

}  // namespace flagctrl::sl
