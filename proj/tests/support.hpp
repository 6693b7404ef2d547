#pragma once

// Shared generators and oracles for the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "flagctrl/root_system.hpp"
#include "flagctrl/sl/control.hpp"

namespace flagctrl::testkit {

using sl::Matrix;
using sl::Vector;

struct LieType {
  Family family;
  int rank;
};

inline std::vector<SimpleRootSet> all_subsets(int rank) {
  std::vector<SimpleRootSet> out;
  for (std::uint32_t bits = 0; bits < (1u << rank); ++bits) out.emplace_back(bits);
  return out;
}

inline Matrix gaussian(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = n(rng);
  }
  return m;
}

inline Matrix traceless(Matrix m) {
  m.diagonal().array() -= m.trace() / static_cast<double>(m.rows());
  return m;
}

/// Haar-ish random rotation: QR of a Gaussian matrix with signs fixed, det +1.
inline Matrix random_rotation(std::mt19937_64& rng, int d) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, d, d));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1.0;
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Gaussian matrix scaled to determinant exactly 1 (up to rounding).
inline Matrix random_sl(std::mt19937_64& rng, int d) {
  Matrix g = gaussian(rng, d, d);
  if (g.determinant() < 0) g.row(0) *= -1.0;
  g /= std::pow(g.determinant(), 1.0 / d);
  return g;
}

/// Random bilinear system on SL(d): entries 0.2 N(0,1), traceless, box [-1,1]^m.
inline sl::ControlSystemSpec random_system(std::mt19937_64& rng, int d, int m, double dt = 1e-3) {
  sl::ControlSystemSpec spec;
  spec.dim = d;
  spec.drift = traceless(gaussian(rng, d, d, 0.2));
  for (int i = 0; i < m; ++i) spec.controls.push_back(traceless(gaussian(rng, d, d, 0.2)));
  spec.lower = Vector::Constant(m, -1.0);
  spec.upper = Vector::Constant(m, 1.0);
  spec.dt = dt;
  spec.cadence = 10;
  spec.validate();
  return spec;
}

inline double relative_error(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

/// exp(tX) via Eigen's Pade-based matrix exponential.
inline Matrix expm(const Matrix& x, double t) { return (t * x).exp(); }

}  // namespace flagctrl::testkit
