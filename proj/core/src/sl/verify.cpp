#include "flagctrl/sl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "flagctrl/error.hpp"
#include "flagctrl/sl/cocycle.hpp"
#include "flagctrl/sl/control.hpp"

namespace flagctrl::sl {

namespace {

struct Context {
  SplitPart split;
  FixedFlag fixed;
  PiSets sets;
  ControlSystemSpec system;
};

std::string subset_str(SimpleRootSet s) {
  std::string out = "{";
  for (int i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

Context make_context(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w,
                     double dt) {
  const RootSystem& rs = weyl.root_system();
  if (rs.family() != Family::A || rs.rank() + 1 != x.rows()) {
    throw InputError("numerical checks need type A" + std::to_string(x.rows() - 1) + ", got " + rs.name());
  }
  SplitPart split = split_part(x);
  if (split.theta != spec.flag_type) {
    throw InputError("the flag type of X is " + subset_str(split.theta) + " but the request uses " +
                     subset_str(spec.flag_type));
  }
  FixedFlag fixed = fixed_flags(split, spec.theta, w);
  PiSets sets = pi_sets(weyl, spec, w);
  return {std::move(split), std::move(fixed), std::move(sets), ControlSystemSpec::autonomous(x, dt)};
}

Matrix flow(const ControlSystemSpec& system, double t) {
  return integrate(system, ControlSignal::constant(Vector(0)), t).final_state();
}

double root_value(const Root& gamma, const Vector& h) {
  double v = 0.0;
  for (std::size_t k = 0; k < gamma.rank(); ++k) v += gamma[k] * (h(k) - h(k + 1));
  return v;
}

Vector root_functional(const Root& gamma) {
  RationalVector coords(gamma.coords().begin(), gamma.coords().end());
  return realize_functional(coords, static_cast<int>(gamma.rank()) + 1);
}

std::vector<double> predicted_exponents(const std::vector<Root>& roots, const Vector& h) {
  std::vector<double> out;
  for (const auto& g : roots) out.push_back(root_value(g, h));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Growth rates of the n-fold power of m, by accumulated QR.
std::vector<double> accumulated_rates(const Matrix& m, int steps, double horizon) {
  const auto k = m.rows();
  std::vector<double> out;
  if (k == 0) return out;
  Matrix q = Matrix::Identity(k, k);
  Vector sums = Vector::Zero(k);
  for (int s = 0; s < steps; ++s) {
    auto [qn, r] = positive_qr(m * q);
    sums += r.diagonal().cwiseAbs().array().log().matrix();
    q = std::move(qn);
  }
  for (Eigen::Index i = 0; i < k; ++i) out.push_back(sums(i) / horizon);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

DeterminantCheck determinant_check(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                                   const ChainControlSetRecord& record, Sign sign, double t, double dt) {
  if (!record.hyperbolic) throw InputError("determinant check needs a hyperbolic record");
  const Context ctx = make_context(x, weyl, spec, record.w, dt);
  const auto& roots = sign == Sign::Plus ? ctx.sets.plus : ctx.sets.minus;
  const auto v = tangent_basis(ctx.fixed, record.w, roots);
  const Matrix psi = flow(ctx.system, t);

  DeterminantCheck out;
  out.time = t;
  out.numeric = projective_derivative_det(psi, ctx.fixed.point, v);

  const FixedFlag attractor = fixed_flags(ctx.split, SimpleRootSet(), weyl.identity());
  const Vector a = a_cocycle(psi, attractor.point);
  const RationalVector sigma = sigma_functional(weyl, spec, record.w, sign);
  out.predicted = std::exp(realize_functional(weyl.root_system(), sigma).dot(a));
  out.relative_error = std::abs(out.numeric - out.predicted) / std::abs(out.predicted);
  return out;
}

double fixedness_residual(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w,
                          const std::vector<double>& times, double dt) {
  const Context ctx = make_context(x, weyl, spec, w, dt);
  double worst = 0.0;
  for (double t : times) {
    worst = std::max(worst, ctx.fixed.point.moved(flow(ctx.system, t)).distance(ctx.fixed.point));
  }
  return worst;
}

RateReport verify_rates(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                        const ChainControlSetRecord& record, const RateOptions& options) {
  if (!record.hyperbolic) {
    throw InputError("rate verification needs a hyperbolic record (w = [" + record.w.word_string() + "])");
  }
  if (!(options.horizon >= 1.0) || !(options.step > 0.0)) throw InputError("rate horizon must be >= 1 with a positive step");
  const Context ctx = make_context(x, weyl, spec, record.w, options.dt);
  const RootSystem& rs = weyl.root_system();
  RateReport report;

  // Attractor cocycle slopes.
  const FixedFlag attractor = fixed_flags(ctx.split, SimpleRootSet(), weyl.identity());
  const CocycleSample sample = sample_cocycle(ctx.system, ControlSignal::constant(Vector(0)), options.horizon,
                                              attractor.point, options.step);
  report.mu = std::numeric_limits<double>::infinity();
  for (const auto& alpha : rs.positive_roots()) {
    if (rs.in_span(alpha, spec.flag_type)) continue;
    const Vector c = root_functional(alpha);
    RootSlope slope{alpha, root_value(alpha, ctx.split.h), std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < sample.times.size(); ++i) {
      if (sample.times[i] < 1.0 - 1e-9) continue;
      slope.min_slope = std::min(slope.min_slope, c.dot(sample.a_values[i]) / sample.times[i]);
    }
    report.mu = std::min(report.mu, slope.min_slope);
    report.attractor_slopes.push_back(std::move(slope));
  }
  if (report.attractor_slopes.empty()) report.mu = 0.0;
  report.bound = std::numeric_limits<double>::infinity();
  for (const auto& slope : report.attractor_slopes) {
    const Vector c = root_functional(slope.root);
    for (std::size_t i = 0; i < sample.times.size(); ++i) {
      report.bound = std::min(report.bound, c.dot(sample.a_values[i]) - report.mu * sample.times[i]);
    }
  }
  if (report.attractor_slopes.empty()) report.bound = 0.0;

  // Growth rates on the stable and unstable directions.
  const int steps = static_cast<int>(std::lround(options.horizon / options.step));
  const double horizon = steps * options.step;
  const Matrix psi = flow(ctx.system, options.step);
  auto rates = [&](const std::vector<Root>& roots) {
    const auto v = tangent_basis(ctx.fixed, record.w, roots);
    return accumulated_rates(restricted_derivative(psi, ctx.fixed.point, v), steps, horizon);
  };
  report.predicted_unstable = predicted_exponents(ctx.sets.plus, ctx.split.h);
  report.observed_unstable = rates(ctx.sets.plus);
  report.predicted_stable = predicted_exponents(ctx.sets.minus, ctx.split.h);
  report.observed_stable = rates(ctx.sets.minus);

  auto compare = [&report](const std::vector<double>& predicted, const std::vector<double>& observed) {
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const double err = std::abs(observed[i] - predicted[i]) / std::abs(predicted[i]);
      report.max_relative_error = std::max(report.max_relative_error, err);
    }
  };
  compare(report.predicted_unstable, report.observed_unstable);
  compare(report.predicted_stable, report.observed_stable);

  report.passed = report.mu > 0.0 && report.max_relative_error <= options.relative_tol;
  return report;
}

NormBounds center_norm_bounds(const Matrix& x, const WeylGroup& weyl, const FlagSpec& spec,
                              const ChainControlSetRecord& record, double horizon, double step, double dt) {
  const Context ctx = make_context(x, weyl, spec, record.w, dt);
  if (ctx.sets.center.empty()) return {1.0, 1.0};
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  const auto v = tangent_basis(ctx.fixed, record.w, ctx.sets.center);
  // The center directions form an invariant subspace of the derivative at the
  // fixed flag, so the restricted derivative at k*step is the k-th power of the
  // one-step matrix. Integrating the whole horizon would lose the determinant to
  // roundoff once the hyperbolic directions separate.
  const auto one_step = [&](double t) {
    return restricted_derivative(integrate(ctx.system, ControlSignal::constant(Vector(0)), t).final_state(),
                                 ctx.fixed.point, v);
  };
  NormBounds out{std::numeric_limits<double>::infinity(), 0.0};
  const auto record_bounds = [&out](const Matrix& m) {
    const Vector s = Eigen::JacobiSVD<Matrix>(m).singularValues();
    out.lower = std::min(out.lower, s(s.size() - 1));
    out.upper = std::max(out.upper, s(0));
  };
  const Matrix m_step = one_step(std::min(step, horizon));
  Matrix m = m_step;
  int k = 1;
  for (; (k + 1) * step < horizon + 1e-9; ++k) {
    record_bounds(m);
    m = m_step * m;
  }
  record_bounds(m);
  const double rest = horizon - k * step;
  if (rest > 1e-9) record_bounds(one_step(rest) * m);
  return out;
}

}  // namespace flagctrl::sl
