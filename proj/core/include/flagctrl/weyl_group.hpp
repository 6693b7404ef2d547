#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagctrl/root_system.hpp"

namespace flagctrl {

/// Weyl group element as an integer matrix acting on simple-root coordinates
/// (column convention: w(alpha) = M alpha). The same matrix acts on
/// simple-coroot coordinates of the Cartan subspace, since H_alpha -> H_{w alpha}
/// is linear in alpha.
class WeylElement {
 public:
  WeylElement(int rank, std::vector<int> matrix, std::vector<int> reduced_word);

  static WeylElement identity(int rank);

  int rank() const { return rank_; }
  int entry(int i, int j) const { return matrix_[i * rank_ + j]; }
  std::span<const int> matrix() const { return matrix_; }
  /// Lexicographically smallest reduced word (simple-reflection indices, left to right).
  const std::vector<int>& reduced_word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }

  Root apply(const Root& alpha) const;
  AVector apply(const AVector& h) const;
  RationalVector apply(const RationalVector& functional) const;

  /// Matrix product; the word of the result is not reduced and is dropped.
  std::vector<int> matrix_product(const WeylElement& other) const;

  bool operator==(const WeylElement& o) const { return matrix_ == o.matrix_; }

  std::string word_string() const;

 private:
  int rank_;
  std::vector<int> matrix_;
  std::vector<int> word_;
};

struct DoubleCoset {
  /// Indices into WeylGroup::elements(), ascending.
  std::vector<std::size_t> members;
  /// Minimal-length member, ties broken lexicographically on the reduced word.
  std::size_t rep;
};

struct WeylGenerateOptions {
  static constexpr std::size_t kHardCap = 1'000'000;
  std::size_t order_cap = kHardCap;
};

/// Finite Weyl group of a root system, fully enumerated.
///
/// Elements are indexed in breadth-first order over right multiplication by
/// simple reflections, children visited in ascending generator order. Index
/// order is therefore (length, lexicographic reduced word), index 0 is the
/// identity, and the first-discovered word of each element is its
/// lexicographically smallest reduced word.
class WeylGroup {
 public:
  /// Throws CapacityError (with the partial count) when the order exceeds the cap.
  static WeylGroup generate(const RootSystem& rs, WeylGenerateOptions options = {});

  const RootSystem& root_system() const { return rs_; }
  int rank() const { return rs_.rank(); }
  std::size_t order() const { return elements_.size(); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const WeylElement& element(std::size_t i) const { return elements_[i]; }
  const WeylElement& identity() const { return elements_.front(); }
  const WeylElement& simple_reflection(int i) const { return elements_[simple_[i]]; }
  std::size_t simple_reflection_index(int i) const { return simple_[i]; }
  /// The principal involution w0, mapping Sigma to -Sigma.
  const WeylElement& longest() const { return elements_[longest_]; }
  std::size_t longest_index() const { return longest_; }

  std::size_t index_of(const WeylElement& w) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  /// Element with the given (not necessarily reduced) word.
  std::size_t from_word(std::span<const int> word) const;

  Root act(const WeylElement& w, const Root& alpha) const;
  AVector act_a(const WeylElement& w, const AVector& h) const { return w.apply(h); }

  /// |Pi+ cap w Pi-|, computed by counting positive roots sent to negative roots.
  int length(const WeylElement& w) const;

  /// Parabolic subgroup W_theta generated by the reflections in theta (indices, ascending).
  std::vector<std::size_t> subgroup(SimpleRootSet theta) const;

  /// Partition of W into double cosets W_left \ W / W_right, ordered by representative.
  std::vector<DoubleCoset> double_cosets(SimpleRootSet left, SimpleRootSet right) const;

 private:
  struct MatrixHash {
    std::size_t operator()(const std::vector<int>& m) const noexcept;
  };

  explicit WeylGroup(RootSystem rs) : rs_(std::move(rs)) {}
  std::size_t lookup(const std::vector<int>& matrix) const;

  RootSystem rs_;
  std::vector<WeylElement> elements_;
  std::unordered_map<std::vector<int>, std::size_t, MatrixHash> index_;
  std::vector<std::size_t> simple_;
  std::size_t longest_ = 0;
};

}  // namespace flagctrl
