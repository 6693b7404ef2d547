#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagctrl/rational.hpp"

namespace flagctrl {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Parses a single family letter (case-insensitive).
Family parse_family(std::string_view text);

/// A root, expanded in the simple roots. Nonzero, all coordinates of one sign.
class Root {
 public:
  explicit Root(std::vector<int> coords);

  std::span<const int> coords() const { return coords_; }
  int operator[](std::size_t i) const { return coords_[i]; }
  std::size_t rank() const { return coords_.size(); }
  int height() const;
  bool is_positive() const;
  /// Simple-root indices with a nonzero coefficient.
  std::uint32_t support() const;

  Root operator-() const;

  auto operator<=>(const Root&) const = default;
  bool operator==(const Root&) const = default;

  std::string str() const;

 private:
  std::vector<int> coords_;
};

/// An element of the Cartan subspace, expanded in the simple coroots H_alpha.
struct AVector {
  RationalVector coords;

  static AVector zero(int rank) { return AVector{RationalVector(rank, 0)}; }
  static AVector coroot(int rank, int i) {
    AVector h = zero(rank);
    h.coords[i] = 1;
    return h;
  }
  bool operator==(const AVector&) const = default;
};

/// A subset of the simple roots, stored as a bitmask over simple-root indices.
class SimpleRootSet {
 public:
  SimpleRootSet() = default;
  explicit SimpleRootSet(std::uint32_t bits) : bits_(bits) {}

  static SimpleRootSet all(int rank) { return SimpleRootSet((1u << rank) - 1u); }
  static SimpleRootSet of(std::initializer_list<int> indices);
  static SimpleRootSet of(std::span<const int> indices);

  bool contains(int i) const { return (bits_ >> i) & 1u; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::uint32_t bits() const { return bits_; }
  std::vector<int> indices() const;
  /// Every bit set in `support` is in this set.
  bool includes(std::uint32_t support) const { return (support & ~bits_) == 0; }

  SimpleRootSet operator&(SimpleRootSet o) const { return SimpleRootSet(bits_ & o.bits_); }
  SimpleRootSet operator|(SimpleRootSet o) const { return SimpleRootSet(bits_ | o.bits_); }
  auto operator<=>(const SimpleRootSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Reduced crystallographic root system of a simple Dynkin type.
///
/// Roots live in simple-root coordinates and Cartan-subspace vectors in
/// simple-coroot coordinates. The pairing matrix P (the symmetrized Cartan
/// matrix, long roots of squared length 2) is the only bridge between the two:
/// alpha(H) = alpha^T P h. The invariant form of the underlying Lie algebra
/// differs from P by a positive scalar; every predicate computed downstream
/// (zero tests, sign tests, subset tests) is insensitive to that scalar.
class RootSystem {
 public:
  static constexpr int kMaxRank = 8;

  /// Builds the system by closing the simple roots under simple reflections.
  /// Throws InputError for an invalid (family, rank) pair.
  static RootSystem build(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const;

  /// Cartan integers <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
  int cartan(int i, int j) const { return cartan_[i * rank_ + j]; }
  const Rational& pairing(int i, int j) const { return pairing_[i * rank_ + j]; }

  /// Positive roots first (by height, then lexicographically), then their negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  std::span<const Root> positive_roots() const { return {roots_.data(), roots_.size() / 2}; }
  std::span<const Root> negative_roots() const {
    return {roots_.data() + roots_.size() / 2, roots_.size() / 2};
  }
  Root simple_root(int i) const;

  std::optional<std::size_t> index_of(const Root& r) const;
  bool contains(const Root& r) const { return index_of(r).has_value(); }

  /// Root-space dimension n_alpha.
  int mult(const Root& r) const;
  int mult(std::size_t root_index) const { return mult_[root_index]; }

  /// Returns a copy carrying the given multiplicities. Every root must be
  /// listed and the map must be invariant under all simple reflections.
  RootSystem with_multiplicities(const std::map<Root, int>& mult) const;

  /// (alpha, beta) through the pairing; works for arbitrary integer/rational coordinates.
  Rational inner(std::span<const int> a, std::span<const int> b) const;
  Rational inner(const RationalVector& a, std::span<const int> b) const;

  /// r_beta(alpha) = alpha - 2 (alpha, beta)/(beta, beta) beta. Throws InputError if beta is not a root.
  Root reflect(const Root& beta, const Root& alpha) const;

  /// Roots that are integer combinations of the roots in theta.
  std::vector<Root> span_subset(SimpleRootSet theta) const;
  bool in_span(const Root& r, SimpleRootSet theta) const { return theta.includes(r.support()); }

  /// alpha(H).
  Rational evaluate(std::span<const int> alpha, const AVector& h) const;
  Rational evaluate(const RationalVector& functional, const AVector& h) const;

  /// Theta(H) = {alpha in Sigma : alpha(H) = 0}. H must lie in the closed
  /// positive chamber; otherwise InputError naming the offending simple root.
  SimpleRootSet characteristic_subset(const AVector& h) const;

  /// The vector H with alpha_i(H) = c_i for all simple roots (solves P h = c exactly).
  AVector from_simple_values(const RationalVector& values) const;

  /// Throws InputError if theta mentions an index >= rank.
  void check_subset(SimpleRootSet theta) const;

 private:
  RootSystem() = default;
  void generate_roots();

  Family family_ = Family::A;
  int rank_ = 0;
  std::vector<int> cartan_;
  RationalVector pairing_;
  std::vector<Root> roots_;
  std::map<Root, std::size_t> index_;
  std::vector<int> mult_;
};

}  // namespace flagctrl
