#pragma once

#include "flagctrl/rational.hpp"
#include "flagctrl/root_system.hpp"
#include "flagctrl/sl/control.hpp"
#include "flagctrl/sl/flag_point.hpp"

namespace flagctrl::sl {

/// a(psi, x) = log of the diagonal part of iwasawa(psi * x.rep).
Vector a_cocycle(const Matrix& psi, const FlagPoint& flag);

/// Max over grid pairs (t, s), t + s <= T, of |a(t+s, xi) - a(s, phi_t xi) - a(t, xi)|,
/// with a(s, phi_t xi) taken from an independent integration of the shifted control.
double cocycle_additivity_residual(const ControlSystemSpec& spec, const ControlSignal& control,
                                   double horizon, const FlagPoint& flag, double grid_step);

/// Max over grid times t of |a*(t, xi) + a(t, phi_{-t} xi)| where xi = (theta_T u, x).
/// a* comes from integrating the reversed system g' = -X(u(T - s)) g backwards
/// from T; the right side from integrating theta_{T-t} u forwards and pulling x back.
double time_reversal_residual(const ControlSystemSpec& spec, const ControlSignal& control,
                              double horizon, const FlagPoint& flag, double grid_step);

/// |beta(a(psi, x k)) - beta(a(psi, x))| for k in K_theta of SL(d).
/// beta is given in simple-root coordinates of A_{d-1} and must vanish on the
/// coroots of theta (checked exactly); k must be block diagonal special
/// orthogonal for the block structure of theta. Throws InputError otherwise.
double ktheta_invariance_residual(const Matrix& psi, const FlagPoint& flag, SimpleRootSet theta,
                                  const RationalVector& beta, const Matrix& k_block);

}  // namespace flagctrl::sl
