#include "flagctrl/sl/derivative.hpp"

#include <cmath>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

namespace {

double frobenius(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

void check_tangent(const FlagPoint& x, const std::vector<Matrix>& v) {
  const Matrix mask = lower_block_mask(x.blocks());
  const auto n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i].rows() != x.dim() || v[i].cols() != x.dim()) throw InputError("tangent vector has the wrong size");
    if ((v[i] - v[i].cwiseProduct(mask)).norm() > 1e-12) {
      throw InputError("tangent vector has entries outside the lower blocks");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(frobenius(v[i], v[j]) - expected) > 1e-9) throw InputError("tangent basis is not orthonormal");
    }
  }
}

std::vector<Matrix> images(const Matrix& r, const std::vector<int>& blocks, const std::vector<Matrix>& v) {
  const Matrix r_inv = r.inverse();
  std::vector<Matrix> out;
  out.reserve(v.size());
  for (const auto& y : v) out.push_back(lower_block(r * y * r_inv, blocks));
  return out;
}

}  // namespace

std::vector<Matrix> tangent_basis(const FixedFlag& fixed, const WeylElement& w, const std::vector<Root>& roots) {
  const int d = fixed.point.dim();
  const auto pi = permutation_of(w);
  std::vector<int> pi_inv(d);
  for (int j = 0; j < d; ++j) pi_inv[pi[j]] = j;
  const auto& blocks = fixed.point.blocks();
  std::vector<int> owner;
  for (std::size_t b = 0; b < blocks.size(); ++b) owner.insert(owner.end(), blocks[b], static_cast<int>(b));

  const Matrix r0_inv = fixed.r0.inverse();
  std::vector<Matrix> basis;
  for (const auto& gamma : roots) {
    if (static_cast<int>(gamma.rank()) != d - 1) throw InputError("root rank does not match the flag");
    int lo = -1;
    int hi = -1;
    for (int k = 0; k < d - 1; ++k) {
      if (gamma[k] != 0) {
        if (lo < 0) lo = k;
        hi = k;
      }
    }
    // gamma = +-(e_lo - e_{hi+1}) = e_a - e_b.
    const int a = gamma.is_positive() ? lo : hi + 1;
    const int b = gamma.is_positive() ? hi + 1 : lo;
    const int i = pi_inv[a];
    const int j = pi_inv[b];
    if (!(i > j && owner[i] != owner[j])) {
      throw InputError("root " + gamma.str() + " is not the image of a root of the tangent space under w");
    }
    Matrix e = Matrix::Zero(d, d);
    e(i, j) = 1.0;
    Matrix y = lower_block(fixed.r0 * e * r0_inv, blocks);
    for (const auto& q : basis) y -= frobenius(q, y) * q;
    const double norm = y.norm();
    if (norm < 1e-10) throw NumericalError("root directions are numerically dependent");
    basis.push_back(y / norm);
  }
  return basis;
}

double projective_derivative_det(const Matrix& psi, const FlagPoint& x, const std::vector<Matrix>& v) {
  check_tangent(x, v);
  if (v.empty()) return 1.0;
  const auto [k, r] = positive_qr(psi * x.rep());
  const auto w = images(r, x.blocks(), v);
  const auto n = x.dim();
  Matrix stacked(n * n, static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    stacked.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(w[i].data(), n * n);
  }
  // sqrt(det(W^T W)) = |prod diag R| for W = QR.
  Eigen::HouseholderQR<Matrix> qr(stacked);
  return qr.matrixQR().diagonal().cwiseAbs().prod();
}

Matrix restricted_derivative(const Matrix& psi, const FlagPoint& x, const std::vector<Matrix>& v) {
  check_tangent(x, v);
  const auto [k, r] = positive_qr(psi * x.rep());
  if (FlagPoint(k, x.blocks()).distance(x) > 1e-6) throw InputError("matrix does not fix the flag");
  const Matrix m = x.rep().transpose() * k;
  const auto w = images(r, x.blocks(), v);
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Matrix back = lower_block(m * w[j] * m.transpose(), x.blocks());
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = frobenius(v[i], back);
  }
  return out;
}

}  // namespace flagctrl::sl
