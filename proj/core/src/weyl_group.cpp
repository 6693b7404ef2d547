#include "flagctrl/weyl_group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl {

// ---------------------------------------------------------------------------
// WeylElement

WeylElement::WeylElement(int rank, std::vector<int> matrix, std::vector<int> reduced_word)
    : rank_(rank), matrix_(std::move(matrix)), word_(std::move(reduced_word)) {
  if (matrix_.size() != static_cast<std::size_t>(rank * rank)) {
    throw InputError("Weyl element matrix has the wrong size");
  }
}

WeylElement WeylElement::identity(int rank) {
  std::vector<int> m(rank * rank, 0);
  for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
  return WeylElement(rank, std::move(m), {});
}

Root WeylElement::apply(const Root& alpha) const {
  std::vector<int> out(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) out[i] += entry(i, j) * alpha[j];
  }
  return Root(std::move(out));
}

AVector WeylElement::apply(const AVector& h) const { return AVector{apply(h.coords)}; }

RationalVector WeylElement::apply(const RationalVector& v) const {
  RationalVector out(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      if (entry(i, j) != 0) out[i] += entry(i, j) * v[j];
    }
  }
  return out;
}

std::vector<int> WeylElement::matrix_product(const WeylElement& other) const {
  std::vector<int> out(rank_ * rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    for (int k = 0; k < rank_; ++k) {
      const int a = entry(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rank_; ++j) out[i * rank_ + j] += a * other.entry(k, j);
    }
  }
  return out;
}

std::string WeylElement::word_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) os << ',';
    os << word_[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// WeylGroup

std::size_t WeylGroup::MatrixHash::operator()(const std::vector<int>& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : m) {
    h ^= static_cast<std::size_t>(x + 64);
    h *= 1099511628211ull;
  }
  return h;
}

WeylGroup WeylGroup::generate(const RootSystem& rs, WeylGenerateOptions options) {
  const std::size_t cap = std::min(options.order_cap, WeylGenerateOptions::kHardCap);
  const int n = rs.rank();
  WeylGroup g(rs);

  std::vector<WeylElement> gens;
  for (int i = 0; i < n; ++i) {
    std::vector<int> m(n * n, 0);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) m[r * n + c] = (r == c ? 1 : 0) - (r == i ? rs.cartan(c, i) : 0);
    }
    gens.emplace_back(n, std::move(m), std::vector<int>{i});
  }

  g.elements_.push_back(WeylElement::identity(n));
  const auto& id = g.elements_.front().matrix();
  g.index_.emplace(std::vector<int>(id.begin(), id.end()), 0);
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> m = g.elements_[head].matrix_product(gens[i]);
      if (g.index_.contains(m)) continue;
      if (g.elements_.size() >= cap) {
        throw CapacityError("Weyl group of " + rs.name() + " exceeds the order cap of " +
                                std::to_string(cap) + " elements",
                            g.elements_.size());
      }
      std::vector<int> word = g.elements_[head].reduced_word();
      word.push_back(i);
      g.index_.emplace(m, g.elements_.size());
      g.elements_.emplace_back(n, std::move(m), std::move(word));
    }
  }

  g.simple_.resize(n);
  for (int i = 0; i < n; ++i) g.simple_[i] = g.index_of(gens[i]);
  g.longest_ = g.elements_.size() - 1;

  for (int i = 0; i < n; ++i) {
    if (g.longest().apply(rs.simple_root(i)).is_positive()) {
      throw InternalError("last enumerated element of " + rs.name() + " is not the principal involution");
    }
  }
  return g;
}

std::size_t WeylGroup::lookup(const std::vector<int>& matrix) const {
  auto it = index_.find(matrix);
  if (it == index_.end()) throw InputError("matrix is not an element of this Weyl group");
  return it->second;
}

std::size_t WeylGroup::index_of(const WeylElement& w) const {
  if (w.rank() != rank()) throw InputError("Weyl element rank mismatch");
  return lookup(std::vector<int>(w.matrix().begin(), w.matrix().end()));
}

std::size_t WeylGroup::multiply(std::size_t a, std::size_t b) const {
  return lookup(elements_[a].matrix_product(elements_[b]));
}

std::size_t WeylGroup::inverse(std::size_t a) const {
  const auto& word = elements_[a].reduced_word();
  std::vector<int> rev(word.rbegin(), word.rend());
  return from_word(rev);
}

std::size_t WeylGroup::from_word(std::span<const int> word) const {
  std::size_t cur = 0;
  for (int i : word) {
    if (i < 0 || i >= rank()) throw InputError("simple reflection index out of range: " + std::to_string(i));
    cur = multiply(cur, simple_[i]);
  }
  return cur;
}

Root WeylGroup::act(const WeylElement& w, const Root& alpha) const {
  Root out = w.apply(alpha);
  if (!rs_.contains(out)) throw InternalError("Weyl action left the root system: " + out.str());
  return out;
}

int WeylGroup::length(const WeylElement& w) const {
  int count = 0;
  for (const auto& alpha : rs_.positive_roots()) {
    if (!w.apply(alpha).is_positive()) ++count;
  }
  return count;
}

std::vector<std::size_t> WeylGroup::subgroup(SimpleRootSet theta) const {
  rs_.check_subset(theta);
  const auto gens = theta.indices();
  std::vector<char> seen(order(), 0);
  std::vector<std::size_t> out{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i : gens) {
      const std::size_t next = multiply(out[head], simple_[i]);
      if (!seen[next]) {
        seen[next] = 1;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DoubleCoset> WeylGroup::double_cosets(SimpleRootSet left, SimpleRootSet right) const {
  rs_.check_subset(left);
  rs_.check_subset(right);
  const auto lgens = left.indices();
  const auto rgens = right.indices();
  std::vector<char> seen(order(), 0);
  std::vector<DoubleCoset> out;
  // Ascending scan: the first unseen index is the minimum of its coset.
  for (std::size_t start = 0; start < order(); ++start) {
    if (seen[start]) continue;
    DoubleCoset coset{{start}, start};
    seen[start] = 1;
    for (std::size_t head = 0; head < coset.members.size(); ++head) {
      const std::size_t cur = coset.members[head];
      auto visit = [&](std::size_t next) {
        if (!seen[next]) {
          seen[next] = 1;
          coset.members.push_back(next);
        }
      };
      for (int i : lgens) visit(multiply(simple_[i], cur));
      for (int i : rgens) visit(multiply(cur, simple_[i]));
    }
    std::sort(coset.members.begin(), coset.members.end());
    out.push_back(std::move(coset));
  }
  return out;
}

}  // namespace flagctrl
