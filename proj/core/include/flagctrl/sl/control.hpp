#pragma once

#include <cstdint>
#include <vector>

#include "flagctrl/sl/flag_point.hpp"
#include "flagctrl/sl/iwasawa.hpp"

namespace flagctrl::sl {

/// Right-invariant system g' = (A0 + sum u_i A_i) g on SL(d,R), controls in a box.
struct ControlSystemSpec {
  int dim = 0;
  Matrix drift;
  std::vector<Matrix> controls;
  Vector lower;
  Vector upper;
  double dt = 1e-3;
  int cadence = 10;

  int channels() const { return static_cast<int>(controls.size()); }
  /// Throws InputError on size mismatches, non-traceless matrices (1e-12),
  /// a box not containing 0 strictly inside, or bad integrator settings.
  void validate() const;
  bool in_range(const Vector& u, double tol = 1e-12) const;
  Matrix generator(const Vector& u) const;

  /// Drift-only system with no control channels.
  static ControlSystemSpec autonomous(const Matrix& x, double dt = 1e-3, int cadence = 10);
};

/// Piecewise-constant control: value k holds on [starts[k], starts[k+1]),
/// the last value holds forever.
class ControlSignal {
 public:
  ControlSignal(std::vector<double> starts, std::vector<Vector> values);

  static ControlSignal constant(const Vector& u);
  /// Uniform samples from the box, one per period, from a seeded mt19937_64.
  static ControlSignal random(const ControlSystemSpec& spec, double period, double horizon,
                              std::uint64_t seed);

  const std::vector<double>& starts() const { return starts_; }
  const std::vector<Vector>& values() const { return values_; }
  int channels() const { return static_cast<int>(values_.front().size()); }

  const Vector& at(double t) const;
  /// t -> u(t + s)
  ControlSignal shifted(double s) const;
  /// t -> u(horizon - t) on [0, horizon]
  ControlSignal reversed(double horizon) const;
  /// Break points strictly inside (0, horizon).
  std::vector<double> breaks_before(double horizon) const;

 private:
  std::vector<double> starts_;
  std::vector<Vector> values_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;

  /// State at a recorded time (within 1e-9); throws InputError otherwise.
  const Matrix& at(double t) const;
  const Matrix& final_state() const { return states.back(); }
};

struct IntegrateOptions {
  /// Extra times in (0, T) the step grid must hit exactly.
  std::vector<double> stops;
  /// Integrate g' = -X(u(t)) g instead.
  bool backward = false;
};

/// Classical RK4 for g' = X(u(t)) g from g(0) = I on [0, T]. The grid splits at
/// control breaks and stops; each piece of length L uses ceil(L/dt) equal
/// steps. Every `cadence` steps g is rescaled by det^{-1/d}; a drift above
/// 1e-6 at that point throws NumericalError with the time stamp. Control
/// values outside the box throw InputError.
Trajectory integrate(const ControlSystemSpec& spec, const ControlSignal& control, double horizon,
                     const IntegrateOptions& options = {});

/// The a-cocycle along a trajectory started at flag0, sampled on a grid.
struct CocycleSample {
  std::vector<double> times;
  std::vector<Vector> a_values;
  FlagPoint flag0;
  ControlSignal control;
};

/// Tracks Y = psi_t * rep with RK4 and re-orthonormalizes by positive QR after
/// every step, summing log diag(R). By the cocycle property the sum equals
/// a(psi_t, flag0) while never forming the ill-conditioned psi_t itself.
/// Samples are taken every `sample_every` (rounded to the step grid) and at T.
CocycleSample sample_cocycle(const ControlSystemSpec& spec, const ControlSignal& control,
                             double horizon, const FlagPoint& flag0, double sample_every);

}  // namespace flagctrl::sl
