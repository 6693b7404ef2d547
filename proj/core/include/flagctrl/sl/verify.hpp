#pragma once

#include <vector>

#include "flagctrl/flag_calculus.hpp"
#include "flagctrl/sl/derivative.hpp"

namespace flagctrl::sl {

// Numerical checks of the flag calculus for an autonomous flow exp(tX) on SL(d).
// X must have split part with characteristic set equal to spec.flag_type and the
// Weyl group must be of type A_{d-1}; otherwise InputError.

struct DeterminantCheck {
  double time = 0.0;
  double numeric = 0.0;
  double predicted = 0.0;
  double relative_error = 0.0;
};

/// |det d(phi_t)| on the unstable (Plus) or stable (Minus) directions at the
/// fixed flag of the record, against exp(sigma(a(t))) with a taken at the
/// attractor of the maximal flag manifold. Requires a hyperbolic record.
DeterminantCheck determinant_check(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                                   const ChainControlSetRecord& record, Sign sign, double t, double dt = 1e-3);

/// max over t in times of the distance between exp(tX).x and x for the fixed flag of w.
double fixedness_residual(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w,
                          const std::vector<double>& times, double dt = 1e-3);

struct RateOptions {
  double horizon = 20.0;
  double step = 0.5;
  double dt = 1e-3;
  double relative_tol = 0.01;
};

struct RootSlope {
  Root root;
  double predicted = 0.0;
  /// min over tau in [1, T] of alpha(a(tau, attractor)) / tau.
  double min_slope = 0.0;
};

struct RateReport {
  std::vector<RootSlope> attractor_slopes;
  /// min of the attractor slopes, and B = min over tau of alpha(a(tau)) - mu tau.
  double mu = 0.0;
  double bound = 0.0;
  /// Exponents sorted descending, with multiplicity.
  std::vector<double> predicted_unstable;
  std::vector<double> observed_unstable;
  std::vector<double> predicted_stable;
  std::vector<double> observed_stable;
  double max_relative_error = 0.0;
  bool passed = false;
};

/// Attractor cocycle slopes for every alpha in Pi+ \ <flag_type>, and the
/// growth rates of d(phi_t) on the stable/unstable directions at the fixed
/// flag, accumulated by repeated QR over steps of length `step` up to T.
/// Rejects non-hyperbolic records.
RateReport verify_rates(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                        const ChainControlSetRecord& record, const RateOptions& options = {});

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Range of the singular values of d(phi_t) on the center directions at the
/// fixed flag, over t on a grid up to T. Empty center gives [1, 1].
NormBounds center_norm_bounds(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                              const ChainControlSetRecord& record, double horizon, double step, double dt = 1e-3);

}  // namespace flagctrl::sl
