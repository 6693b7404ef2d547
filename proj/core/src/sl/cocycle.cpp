#include "flagctrl/sl/cocycle.hpp"

#include <cmath>

#include "flagctrl/error.hpp"
#include "flagctrl/sl/spectral.hpp"

namespace flagctrl::sl {

namespace {

std::vector<double> grid(double horizon, double step) {
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  std::vector<double> out;
  for (int k = 0; k * step <= horizon + 1e-9; ++k) out.push_back(std::min(k * step, horizon));
  return out;
}

std::vector<double> interior(const std::vector<double>& g, double horizon) {
  std::vector<double> out;
  for (double t : g) {
    if (t > 0.0 && t < horizon) out.push_back(t);
  }
  return out;
}

}  // namespace

Vector a_cocycle(const Matrix& psi, const FlagPoint& flag) {
  if (psi.rows() != flag.dim() || psi.cols() != flag.dim()) throw InputError("matrix size does not match the flag");
  // a(1, x) = 0 for every x; skip the rounding of a QR of the orthogonal rep.
  if (psi == Matrix::Identity(flag.dim(), flag.dim())) return Vector::Zero(flag.dim());
  return iwasawa(psi * flag.rep()).a;
}

double cocycle_additivity_residual(const ControlSystemSpec& spec, const ControlSignal& control,
                                   double horizon, const FlagPoint& flag, double grid_step) {
  const auto times = grid(horizon, grid_step);
  const Trajectory main = integrate(spec, control, horizon, {interior(times, horizon)});
  double worst = 0.0;
  for (double t : times) {
    const double rest = horizon - t;
    std::vector<double> s_grid;
    for (double s : times) {
      if (s <= rest + 1e-9) s_grid.push_back(std::min(s, rest));
    }
    const Trajectory shifted = integrate(spec, control.shifted(t), rest, {interior(s_grid, rest)});
    const FlagPoint moved = flag.moved(main.at(t));
    const Vector a_t = a_cocycle(main.at(t), flag);
    for (double s : s_grid) {
      const Vector r = a_cocycle(main.at(t + s), flag) - a_cocycle(shifted.at(s), moved) - a_t;
      worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
    }
  }
  return worst;
}

double time_reversal_residual(const ControlSystemSpec& spec, const ControlSignal& control,
                              double horizon, const FlagPoint& flag, double grid_step) {
  const auto times = grid(horizon, grid_step);
  IntegrateOptions back_opts{interior(times, horizon), true};
  const Trajectory back = integrate(spec, control.reversed(horizon), horizon, back_opts);
  double worst = 0.0;
  for (double t : times) {
    const Vector lhs = a_cocycle(back.at(t), flag);
    const Matrix psi = integrate(spec, control.shifted(horizon - t), t).final_state();
    const FlagPoint pulled = flag.moved(psi.inverse());
    const Vector rhs = a_cocycle(psi, pulled);
    worst = std::max(worst, (lhs + rhs).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

double ktheta_invariance_residual(const Matrix& psi, const FlagPoint& flag, SimpleRootSet theta,
                                  const RationalVector& beta, const Matrix& k_block) {
  const int d = flag.dim();
  const RootSystem rs = RootSystem::build(Family::A, d - 1);
  rs.check_subset(theta);
  if (static_cast<int>(beta.size()) != d - 1) throw InputError("functional has the wrong length");
  for (int i : theta.indices()) {
    const Rational v = rs.evaluate(beta, AVector::coroot(d - 1, i));
    if (v != 0) {
      throw InputError("functional does not vanish on the coroot of simple root " + std::to_string(i) +
                       " (value " + v.str() + ")");
    }
  }
  check_block_orthogonal(k_block, blocks_for(theta, d));
  const Vector c = realize_functional(beta, d);
  const Vector a0 = iwasawa(psi * flag.rep()).a;
  const Vector a1 = iwasawa(psi * flag.rep() * k_block).a;
  return std::abs(c.dot(a1 - a0));
}

}  // namespace flagctrl::sl
