#include "flagctrl/sl/flag_point.hpp"

#include <numeric>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

namespace {

void check_blocks(const std::vector<int>& blocks, Eigen::Index d) {
  int total = 0;
  for (int b : blocks) {
    if (b <= 0) throw InputError("flag block sizes must be positive");
    total += b;
  }
  if (total != d) throw InputError("flag block sizes do not add up to the dimension");
}

// Block index of every coordinate.
std::vector<int> block_of(const std::vector<int>& blocks) {
  std::vector<int> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) out.insert(out.end(), blocks[b], static_cast<int>(b));
  return out;
}

}  // namespace

std::vector<int> blocks_for(SimpleRootSet theta, int d) {
  if (d < 2) throw InputError("flag manifolds need d >= 2");
  if (!SimpleRootSet::all(d - 1).includes(theta.bits())) {
    throw InputError("theta mentions a simple root outside A" + std::to_string(d - 1));
  }
  std::vector<int> blocks;
  int current = 1;
  for (int i = 0; i < d - 1; ++i) {
    if (theta.contains(i)) {
      ++current;
    } else {
      blocks.push_back(current);
      current = 1;
    }
  }
  blocks.push_back(current);
  return blocks;
}

Matrix lower_block_mask(const std::vector<int>& blocks) {
  const auto owner = block_of(blocks);
  const auto d = static_cast<Eigen::Index>(owner.size());
  Matrix mask = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (owner[i] > owner[j]) mask(i, j) = 1.0;
    }
  }
  return mask;
}

Matrix lower_block(const Matrix& y, const std::vector<int>& blocks) {
  return y.cwiseProduct(lower_block_mask(blocks));
}

void check_block_orthogonal(const Matrix& k, const std::vector<int>& blocks, double tol) {
  check_blocks(blocks, k.rows());
  if (k.rows() != k.cols()) throw InputError("block factor must be square");
  const auto owner = block_of(blocks);
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      if (owner[i] != owner[j] && std::abs(k(i, j)) > tol) {
        throw InputError("block factor is not block diagonal for the flag type");
      }
    }
  }
  const auto d = k.rows();
  if ((k.transpose() * k - Matrix::Identity(d, d)).norm() > tol * d) {
    throw InputError("block factor is not orthogonal");
  }
  if (k.determinant() < 0) throw InputError("block factor has determinant -1");
}

FlagPoint::FlagPoint(Matrix rep, std::vector<int> blocks) : rep_(std::move(rep)), blocks_(std::move(blocks)) {
  if (rep_.rows() != rep_.cols()) throw InputError("flag representative must be square");
  check_blocks(blocks_, rep_.rows());
  const auto d = rep_.rows();
  if ((rep_.transpose() * rep_ - Matrix::Identity(d, d)).norm() > 1e-10 * d) {
    throw InputError("flag representative is not orthogonal");
  }
  if (rep_.determinant() < 0) throw InputError("flag representative has determinant -1");
}

FlagPoint FlagPoint::from_basis(const Matrix& basis, std::vector<int> blocks) {
  if (basis.rows() != basis.cols()) throw InputError("flag basis must be square");
  if (condition_number(basis) > 1e12) throw InputError("flag basis is singular or ill-conditioned");
  return FlagPoint(positive_qr(basis).q, std::move(blocks));
}

FlagPoint FlagPoint::standard(int d, std::vector<int> blocks) {
  return FlagPoint(Matrix::Identity(d, d), std::move(blocks));
}

FlagPoint FlagPoint::moved(const Matrix& psi) const {
  if (psi.rows() != dim() || psi.cols() != dim()) throw InputError("matrix size does not match the flag");
  return FlagPoint(positive_qr(psi * rep_).q, blocks_);
}

FlagPoint FlagPoint::right_multiplied(const Matrix& k) const {
  check_block_orthogonal(k, blocks_);
  return FlagPoint(rep_ * k, blocks_);
}

double FlagPoint::distance(const FlagPoint& other) const {
  if (other.blocks_ != blocks_) throw InputError("flags of different types");
  double worst = 0.0;
  Eigen::Index end = 0;
  for (std::size_t b = 0; b + 1 < blocks_.size(); ++b) {
    end += blocks_[b];
    const Matrix p = rep_.leftCols(end) * rep_.leftCols(end).transpose();
    const Matrix q = other.rep_.leftCols(end) * other.rep_.leftCols(end).transpose();
    worst = std::max(worst, (p - q).norm());
  }
  return worst;
}

}  // namespace flagctrl::sl
