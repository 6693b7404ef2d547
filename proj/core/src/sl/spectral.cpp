#include "flagctrl/sl/spectral.hpp"

#include <algorithm>
#include <complex>
#include <numeric>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

SplitPart split_part(const Matrix& x, double gap_tol) {
  if (x.rows() != x.cols() || x.rows() < 2) throw InputError("split_part needs a square matrix of size >= 2");
  if (!x.allFinite()) throw InputError("matrix has non-finite entries");
  const double scale = std::max(1.0, x.norm());
  if (std::abs(x.trace()) > 1e-10 * scale) throw InputError("matrix is not traceless");
  const double merge_tol = 1e-9 * scale;
  const auto d = x.rows();

  Eigen::EigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation did not converge");
  const Eigen::VectorXcd evals = es.eigenvalues();
  const Eigen::MatrixXcd evecs = es.eigenvectors();

  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (evals(a).real() != evals(b).real()) return evals(a).real() > evals(b).real();
    return evals(a).imag() > evals(b).imag();
  });

  std::vector<std::vector<Eigen::Index>> groups{{order[0]}};
  for (Eigen::Index k = 1; k < d; ++k) {
    const double gap = evals(order[k - 1]).real() - evals(order[k]).real();
    if (gap <= merge_tol) {
      groups.back().push_back(order[k]);
    } else if (gap < gap_tol) {
      std::ostringstream os;
      os << "real parts " << evals(order[k - 1]).real() << " and " << evals(order[k]).real()
         << " differ by " << gap << ", inside the ambiguous band below the gap tolerance " << gap_tol
         << "; pass an explicit tolerance";
      throw InputError(os.str());
    } else {
      groups.push_back({order[k]});
    }
  }

  SplitPart out{Vector(d), SimpleRootSet(), Matrix(d, d)};
  Eigen::Index col = 0;
  std::vector<int> group_of;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double mean = 0.0;
    for (auto i : groups[g]) mean += evals(i).real();
    mean /= static_cast<double>(groups[g].size());
    const Eigen::Index first = col;
    for (auto i : groups[g]) {
      const double im = evals(i).imag();
      if (im < -merge_tol) continue;
      Eigen::VectorXcd v = evecs.col(i);
      v.normalize();
      if (im > merge_tol) {
        if (col + 2 > first + static_cast<Eigen::Index>(groups[g].size())) {
          throw InputError("unpaired complex eigenvalue");
        }
        out.basis.col(col++) = v.real();
        out.basis.col(col++) = v.imag();
      } else {
        // Eigen returns real eigenvectors for real eigenvalues of a real matrix.
        out.basis.col(col++) = v.real().normalized();
      }
    }
    if (col - first != static_cast<Eigen::Index>(groups[g].size())) throw InputError("unpaired complex eigenvalue");
    for (Eigen::Index k = first; k < col; ++k) {
      out.h(k) = mean;
      group_of.push_back(static_cast<int>(g));
    }
  }
  out.h.array() -= out.h.mean();

  std::uint32_t bits = 0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    if (group_of[i] == group_of[i + 1]) bits |= 1u << i;
  }
  out.theta = SimpleRootSet(bits);

  const double cond = condition_number(out.basis);
  if (!(cond <= 1e8)) {
    std::ostringstream os;
    os << "matrix is not diagonalizable (eigenbasis condition estimate " << cond << ")";
    throw InputError(os.str());
  }
  return out;
}

std::vector<int> permutation_of(const WeylElement& w) {
  const int d = w.rank() + 1;
  const auto& word = w.reduced_word();
  std::vector<int> pi(d);
  for (int j = 0; j < d; ++j) {
    int v = j;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (v == *it) {
        v = *it + 1;
      } else if (v == *it + 1) {
        v = *it;
      }
    }
    pi[j] = v;
  }
  // w(alpha_i) = e_{pi(i)} - e_{pi(i+1)} must match the matrix action.
  for (int i = 0; i + 1 < d; ++i) {
    std::vector<int> expected(d - 1, 0);
    const int a = std::min(pi[i], pi[i + 1]);
    const int b = std::max(pi[i], pi[i + 1]);
    const int sign = pi[i] < pi[i + 1] ? 1 : -1;
    for (int k = a; k < b; ++k) expected[k] = sign;
    for (int r = 0; r < d - 1; ++r) {
      if (w.entry(r, i) != expected[r]) {
        throw InputError("element [" + w.word_string() + "] is not a Weyl element of type A" +
                         std::to_string(d - 1) + " with a matching word");
      }
    }
  }
  return pi;
}

FixedFlag fixed_flags(const SplitPart& split, SimpleRootSet theta, const WeylElement& w) {
  const auto d = split.basis.rows();
  if (w.rank() != d - 1) throw InputError("Weyl element rank does not match the matrix size");
  const auto pi = permutation_of(w);
  Matrix frame(d, d);
  for (Eigen::Index j = 0; j < d; ++j) frame.col(j) = split.basis.col(pi[j]);
  FlagPoint point = FlagPoint::from_basis(frame, blocks_for(theta, static_cast<int>(d)));
  Matrix r0 = point.rep().transpose() * frame;
  return {std::move(point), std::move(frame), std::move(r0)};
}

FixedFlag fixed_flags(const Matrix& x, SimpleRootSet theta, const WeylElement& w, double gap_tol) {
  return fixed_flags(split_part(x, gap_tol), theta, w);
}

Vector realize_functional(const RationalVector& sigma, int d) {
  if (d < 2 || static_cast<int>(sigma.size()) != d - 1) throw InputError("functional length must be d - 1");
  Vector c(d);
  for (int j = 0; j < d; ++j) {
    const Rational b_j = j < d - 1 ? sigma[j] : Rational(0);
    const Rational b_prev = j > 0 ? sigma[j - 1] : Rational(0);
    c(j) = static_cast<double>(b_j - b_prev);
  }
  return c;
}

Vector realize_functional(const RootSystem& rs, const RationalVector& sigma) {
  if (rs.family() != Family::A) throw InputError("realization on diagonal matrices needs type A, got " + rs.name());
  if (static_cast<int>(sigma.size()) != rs.rank()) throw InputError("functional length must equal the rank");
  return realize_functional(sigma, rs.rank() + 1);
}

Vector realize_avector(const AVector& h) {
  const int d = static_cast<int>(h.coords.size()) + 1;
  Vector out(d);
  for (int k = 0; k < d; ++k) {
    const Rational cur = k < d - 1 ? h.coords[k] : Rational(0);
    const Rational prev = k > 0 ? h.coords[k - 1] : Rational(0);
    out(k) = static_cast<double>(cur - prev);
  }
  return out;
}

}  // namespace flagctrl::sl
