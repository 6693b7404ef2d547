#include "flagctrl/sl/control.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

namespace {

constexpr double kTimeTol = 1e-9;

Matrix rk4_step(const Matrix& x, const Matrix& g, double h) {
  const Matrix k1 = x * g;
  const Matrix k2 = x * (g + 0.5 * h * k1);
  const Matrix k3 = x * (g + 0.5 * h * k2);
  const Matrix k4 = x * (g + h * k3);
  return g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Piece {
  double t0;
  double t1;
  int steps;
};

std::vector<Piece> step_grid(const ControlSystemSpec& spec, const ControlSignal& control, double horizon,
                             const std::vector<double>& stops) {
  std::vector<double> cuts{0.0, horizon};
  for (double b : control.breaks_before(horizon)) cuts.push_back(b);
  for (double s : stops) {
    if (s > 0.0 && s < horizon) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> unique;
  for (double c : cuts) {
    if (unique.empty() || c - unique.back() > kTimeTol) unique.push_back(c);
  }
  unique.back() = horizon;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < unique.size(); ++i) {
    const double len = unique[i + 1] - unique[i];
    const int n = std::max(1, static_cast<int>(std::ceil(len / spec.dt - 1e-9)));
    pieces.push_back({unique[i], unique[i + 1], n});
  }
  return pieces;
}

void check_horizon(double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InputError("horizon must be a finite nonnegative time");
}

std::string at_time(double t) {
  std::ostringstream os;
  os << " at t = " << t;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// ControlSystemSpec

void ControlSystemSpec::validate() const {
  if (dim < 2) throw InputError("control system dimension must be at least 2");
  auto check_matrix = [this](const Matrix& m, const std::string& name) {
    if (m.rows() != dim || m.cols() != dim) throw InputError(name + " has the wrong size");
    if (!m.allFinite()) throw InputError(name + " has non-finite entries");
    if (std::abs(m.trace()) > 1e-12) throw InputError(name + " is not traceless");
  };
  check_matrix(drift, "drift");
  for (std::size_t i = 0; i < controls.size(); ++i) check_matrix(controls[i], "control " + std::to_string(i));
  if (lower.size() != channels() || upper.size() != channels()) {
    throw InputError("control range needs one interval per control matrix");
  }
  for (int i = 0; i < channels(); ++i) {
    if (!(lower(i) < 0.0 && 0.0 < upper(i))) {
      throw InputError("control range must contain 0 strictly inside (channel " + std::to_string(i) + ")");
    }
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("integrator dt must be positive");
  if (cadence < 1) throw InputError("renormalization cadence must be at least 1");
}

bool ControlSystemSpec::in_range(const Vector& u, double tol) const {
  if (u.size() != channels()) return false;
  for (int i = 0; i < channels(); ++i) {
    if (u(i) < lower(i) - tol || u(i) > upper(i) + tol) return false;
  }
  return true;
}

Matrix ControlSystemSpec::generator(const Vector& u) const {
  if (u.size() != channels()) throw InputError("control value has the wrong number of channels");
  Matrix x = drift;
  for (int i = 0; i < channels(); ++i) x += u(i) * controls[i];
  return x;
}

ControlSystemSpec ControlSystemSpec::autonomous(const Matrix& x, double dt, int cadence) {
  ControlSystemSpec spec;
  spec.dim = static_cast<int>(x.rows());
  spec.drift = x;
  spec.dt = dt;
  spec.cadence = cadence;
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// ControlSignal

ControlSignal::ControlSignal(std::vector<double> starts, std::vector<Vector> values)
    : starts_(std::move(starts)), values_(std::move(values)) {
  if (starts_.empty() || starts_.size() != values_.size()) {
    throw InputError("control signal needs one start time per value");
  }
  if (starts_.front() != 0.0) throw InputError("control signal must start at t = 0");
  for (std::size_t i = 1; i < starts_.size(); ++i) {
    if (!(starts_[i] > starts_[i - 1])) throw InputError("control start times must increase");
  }
  for (const auto& v : values_) {
    if (v.size() != values_.front().size()) throw InputError("control values differ in length");
  }
}

ControlSignal ControlSignal::constant(const Vector& u) { return ControlSignal({0.0}, {u}); }

ControlSignal ControlSignal::random(const ControlSystemSpec& spec, double period, double horizon,
                                    std::uint64_t seed) {
  if (!(period > 0.0)) throw InputError("sample period must be positive");
  check_horizon(horizon);
  std::mt19937_64 rng(seed);
  const int pieces = std::max(1, static_cast<int>(std::ceil(horizon / period - 1e-9)));
  std::vector<double> starts;
  std::vector<Vector> values;
  for (int k = 0; k < pieces; ++k) {
    Vector u(spec.channels());
    for (int i = 0; i < spec.channels(); ++i) {
      std::uniform_real_distribution<double> dist(spec.lower(i), spec.upper(i));
      u(i) = dist(rng);
    }
    starts.push_back(k * period);
    values.push_back(std::move(u));
  }
  return ControlSignal(std::move(starts), std::move(values));
}

const Vector& ControlSignal::at(double t) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  if (it == starts_.begin()) return values_.front();
  return values_[static_cast<std::size_t>(it - starts_.begin()) - 1];
}

ControlSignal ControlSignal::shifted(double s) const {
  std::vector<double> starts{0.0};
  std::vector<Vector> values{at(s)};
  for (std::size_t k = 0; k < starts_.size(); ++k) {
    if (starts_[k] > s + kTimeTol) {
      starts.push_back(starts_[k] - s);
      values.push_back(values_[k]);
    }
  }
  return ControlSignal(std::move(starts), std::move(values));
}

std::vector<double> ControlSignal::breaks_before(double horizon) const {
  std::vector<double> out;
  for (std::size_t k = 1; k < starts_.size(); ++k) {
    if (starts_[k] < horizon - kTimeTol) out.push_back(starts_[k]);
  }
  return out;
}

ControlSignal ControlSignal::reversed(double horizon) const {
  check_horizon(horizon);
  std::vector<double> cuts{0.0};
  for (double b : breaks_before(horizon)) cuts.push_back(b);
  cuts.push_back(horizon);
  std::vector<double> starts;
  std::vector<Vector> values;
  for (std::size_t k = cuts.size() - 1; k-- > 0;) {
    starts.push_back(horizon - cuts[k + 1]);
    values.push_back(at(0.5 * (cuts[k] + cuts[k + 1])));
  }
  starts.front() = 0.0;
  return ControlSignal(std::move(starts), std::move(values));
}

// ---------------------------------------------------------------------------
// Integration

const Matrix& Trajectory::at(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t - kTimeTol);
  if (it == times.end() || std::abs(*it - t) > kTimeTol) {
    throw InputError("time" + at_time(t) + " is not on the trajectory grid");
  }
  return states[static_cast<std::size_t>(it - times.begin())];
}

Trajectory integrate(const ControlSystemSpec& spec, const ControlSignal& control, double horizon,
                     const IntegrateOptions& options) {
  spec.validate();
  check_horizon(horizon);
  if (control.channels() != spec.channels()) throw InputError("control signal has the wrong number of channels");
  const int d = spec.dim;
  Trajectory traj;
  Matrix g = Matrix::Identity(d, d);
  traj.times.push_back(0.0);
  traj.states.push_back(g);
  long step = 0;
  for (const Piece& piece : step_grid(spec, control, horizon, options.stops)) {
    const Vector& u = control.at(0.5 * (piece.t0 + piece.t1));
    if (!spec.in_range(u)) throw InputError("control value outside the range" + at_time(piece.t0));
    Matrix x = spec.generator(u);
    if (options.backward) x = -x;
    const double h = (piece.t1 - piece.t0) / piece.steps;
    for (int j = 1; j <= piece.steps; ++j) {
      g = rk4_step(x, g, h);
      const double t = j == piece.steps ? piece.t1 : piece.t0 + j * h;
      if (++step % spec.cadence == 0) {
        const double det = g.determinant();
        if (!(std::abs(det - 1.0) <= 1e-6)) {
          std::ostringstream os;
          os << "determinant drift " << det - 1.0 << at_time(t) << " exceeds 1e-6; reduce dt";
          throw NumericalError(os.str());
        }
        g *= std::pow(det, -1.0 / d);
      }
      traj.times.push_back(t);
      traj.states.push_back(g);
    }
  }
  return traj;
}

CocycleSample sample_cocycle(const ControlSystemSpec& spec, const ControlSignal& control, double horizon,
                             const FlagPoint& flag0, double sample_every) {
  spec.validate();
  check_horizon(horizon);
  if (!(sample_every > 0.0)) throw InputError("sample spacing must be positive");
  if (flag0.dim() != spec.dim) throw InputError("flag dimension does not match the system");
  if (control.channels() != spec.channels()) throw InputError("control signal has the wrong number of channels");

  std::vector<double> stops;
  for (int k = 1; k * sample_every < horizon - kTimeTol; ++k) stops.push_back(k * sample_every);

  const int d = spec.dim;
  CocycleSample out{{0.0}, {Vector::Zero(d)}, flag0, control};
  Matrix y = flag0.rep();
  Vector acc = Vector::Zero(d);
  std::size_t next_stop = 0;
  long step = 0;
  for (const Piece& piece : step_grid(spec, control, horizon, stops)) {
    const Vector& u = control.at(0.5 * (piece.t0 + piece.t1));
    if (!spec.in_range(u)) throw InputError("control value outside the range" + at_time(piece.t0));
    const Matrix x = spec.generator(u);
    const double h = (piece.t1 - piece.t0) / piece.steps;
    for (int j = 1; j <= piece.steps; ++j) {
      auto [q, r] = positive_qr(rk4_step(x, y, h));
      y = std::move(q);
      acc += r.diagonal().cwiseAbs().array().log().matrix();
      if (++step % spec.cadence == 0) {
        const double log_det = acc.sum();
        if (!(std::abs(log_det) <= 1e-6)) {
          std::ostringstream os;
          os << "determinant drift " << log_det << at_time(piece.t0 + j * h) << " exceeds 1e-6; reduce dt";
          throw NumericalError(os.str());
        }
        acc.array() -= log_det / d;
      }
    }
    const bool at_stop = next_stop < stops.size() && std::abs(piece.t1 - stops[next_stop]) <= kTimeTol;
    if (at_stop || piece.t1 == horizon) {
      if (at_stop) ++next_stop;
      out.times.push_back(piece.t1);
      out.a_values.push_back(acc);
    }
  }
  return out;
}

}  // namespace flagctrl::sl
