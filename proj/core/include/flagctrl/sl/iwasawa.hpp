#pragma once

#include <Eigen/Dense>

namespace flagctrl::sl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// g = k * diag(exp(a)) * n with k in SO(d) and n upper unitriangular.
struct IwasawaTriple {
  Matrix k;
  Vector a;
  Matrix n;

  Matrix reassemble() const;
};

/// QR with a strictly positive triangular diagonal. For det m < 0 the sign of
/// the last column of q (and last row of r) is flipped so that det q = +1;
/// r then has a negative last diagonal entry.
struct PositiveQR {
  Matrix q;
  Matrix r;
};
PositiveQR positive_qr(const Matrix& m);

/// Iwasawa decomposition in SL(d,R).
/// Requires |det g - 1| <= 1e-8 and condition number <= 1e12; throws InputError otherwise.
/// Note that sum(a) = log det g, so sum(a) is only as close to 0 as det g is to 1.
IwasawaTriple iwasawa(const Matrix& g);

/// 2-norm condition number via SVD.
double condition_number(const Matrix& m);

}  // namespace flagctrl::sl
