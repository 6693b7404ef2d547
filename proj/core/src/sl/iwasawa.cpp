#include "flagctrl/sl/iwasawa.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

Matrix IwasawaTriple::reassemble() const { return k * a.array().exp().matrix().asDiagonal() * n; }

PositiveQR positive_qr(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InputError("positive_qr needs a nonempty square matrix");
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    if (r(i, i) < 0) {
      q.col(i) *= -1.0;
      r.row(i) *= -1.0;
    }
  }
  if (q.determinant() < 0) {
    const Eigen::Index last = q.cols() - 1;
    q.col(last) *= -1.0;
    r.row(last) *= -1.0;
  }
  return {std::move(q), std::move(r)};
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

IwasawaTriple iwasawa(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) throw InputError("iwasawa needs a nonempty square matrix");
  const double cond = condition_number(g);
  if (!(cond <= 1e12)) {
    std::ostringstream os;
    os << "matrix is rank deficient or ill-conditioned (condition estimate " << cond << ")";
    throw InputError(os.str());
  }
  const double det = g.determinant();
  if (!(std::abs(det - 1.0) <= 1e-8)) {
    std::ostringstream os;
    os.precision(17);
    os << "iwasawa expects det g = 1, got " << det << " (condition estimate " << cond << ")";
    throw InputError(os.str());
  }
  auto [q, r] = positive_qr(g);
  // det g > 0 so every diagonal entry of r is already positive.
  const Vector diag = r.diagonal();
  Matrix n = diag.cwiseInverse().asDiagonal() * r;
  n.diagonal().setOnes();
  return {std::move(q), diag.array().log().matrix(), std::move(n)};
}

}  // namespace flagctrl::sl
