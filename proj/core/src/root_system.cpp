#include "flagctrl/root_system.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl {

Family parse_family(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return Family::A;
      case 'B': return Family::B;
      case 'C': return Family::C;
      case 'D': return Family::D;
      case 'E': return Family::E;
      case 'F': return Family::F;
      case 'G': return Family::G;
      default: break;
    }
  }
  throw InputError("unknown Dynkin family '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Root

Root::Root(std::vector<int> coords) : coords_(std::move(coords)) {
  bool pos = false;
  bool neg = false;
  for (int c : coords_) {
    pos = pos || c > 0;
    neg = neg || c < 0;
  }
  if (!pos && !neg) throw InputError("a root must be nonzero");
  if (pos && neg) throw InputError("root coordinates of mixed sign: " + str());
}

int Root::height() const {
  int h = 0;
  for (int c : coords_) h += c;
  return h;
}

bool Root::is_positive() const {
  return std::any_of(coords_.begin(), coords_.end(), [](int c) { return c > 0; });
}

std::uint32_t Root::support() const {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0) s |= 1u << i;
  }
  return s;
}

Root Root::operator-() const {
  std::vector<int> c(coords_);
  for (int& x : c) x = -x;
  return Root(std::move(c));
}

std::string Root::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// SimpleRootSet

SimpleRootSet SimpleRootSet::of(std::initializer_list<int> indices) {
  return of(std::span<const int>(indices.begin(), indices.size()));
}

SimpleRootSet SimpleRootSet::of(std::span<const int> indices) {
  std::uint32_t bits = 0;
  for (int i : indices) {
    if (i < 0 || i >= 32) throw InputError("simple root index out of range: " + std::to_string(i));
    bits |= 1u << i;
  }
  return SimpleRootSet(bits);
}

int SimpleRootSet::size() const { return std::popcount(bits_); }

std::vector<int> SimpleRootSet::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// RootSystem construction

namespace {

// Gram matrix of the simple roots, long roots normalized to squared length 2
// (Bourbaki numbering, zero-based).
RationalVector simple_gram(Family family, int n) {
  RationalVector g(n * n, 0);
  auto set = [&](int i, int j, Rational v) {
    g[i * n + j] = v;
    g[j * n + i] = v;
  };
  auto chain = [&](int from, int to, Rational len2, Rational link) {
    for (int i = from; i <= to; ++i) g[i * n + i] = len2;
    for (int i = from; i < to; ++i) set(i, i + 1, link);
  };
  const Rational half(1, 2);
  switch (family) {
    case Family::A:
      chain(0, n - 1, 2, -1);
      break;
    case Family::B:
      chain(0, n - 1, 2, -1);
      g[(n - 1) * n + (n - 1)] = 1;
      break;
    case Family::C:
      chain(0, n - 1, 1, -half);
      g[(n - 1) * n + (n - 1)] = 2;
      set(n - 2, n - 1, -1);
      break;
    case Family::D:
      chain(0, n - 2, 2, -1);
      g[(n - 1) * n + (n - 1)] = 2;
      set(n - 3, n - 1, -1);
      break;
    case Family::E:
      for (int i = 0; i < n; ++i) g[i * n + i] = 2;
      set(0, 2, -1);
      set(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) set(i, i + 1, -1);
      break;
    case Family::F:
      g[0] = 2;
      g[1 * n + 1] = 2;
      g[2 * n + 2] = 1;
      g[3 * n + 3] = 1;
      set(0, 1, -1);
      set(1, 2, -1);
      set(2, 3, -half);
      break;
    case Family::G:
      g[0] = Rational(2, 3);
      g[1 * n + 1] = 2;
      set(0, 1, -1);
      break;
  }
  return g;
}

bool valid_type(Family family, int rank) {
  if (rank < 1 || rank > RootSystem::kMaxRank) return false;
  switch (family) {
    case Family::A: return true;
    case Family::B: return rank >= 2;
    case Family::C: return rank >= 2;
    case Family::D: return rank >= 3;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
  }
  return false;
}

std::int64_t to_int(const Rational& q) {
  if (denominator(q) != 1) throw InternalError("expected an integer, got " + q.str());
  return static_cast<std::int64_t>(numerator(q));
}

}  // namespace

RootSystem RootSystem::build(Family family, int rank) {
  if (!valid_type(family, rank)) {
    throw InputError("invalid Dynkin type (" + std::string(1, static_cast<char>(family)) + ", " +
                     std::to_string(rank) + ")");
  }
  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;
  rs.pairing_ = simple_gram(family, rank);
  rs.cartan_.resize(rank * rank);
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      rs.cartan_[i * rank + j] =
          static_cast<int>(to_int(2 * rs.pairing(i, j) / rs.pairing(j, j)));
    }
  }
  rs.generate_roots();
  rs.mult_.assign(rs.roots_.size(), 1);
  return rs;
}

void RootSystem::generate_roots() {
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> e(rank_, 0);
    e[i] = 1;
    queue.push_back(e);
    seen.insert(e);
    e[i] = -1;
    queue.push_back(e);
    seen.insert(e);
  }
  while (!queue.empty()) {
    std::vector<int> beta = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < rank_; ++i) {
      // <beta, alpha_i^vee> = sum_j beta_j <alpha_j, alpha_i^vee>
      int c = 0;
      for (int j = 0; j < rank_; ++j) c += beta[j] * cartan(j, i);
      if (c == 0) continue;
      std::vector<int> image(beta);
      image[i] -= c;
      if (seen.insert(image).second) queue.push_back(std::move(image));
    }
  }

  std::vector<Root> positive;
  for (const auto& c : seen) {
    Root r(c);
    if (r.is_positive()) positive.push_back(std::move(r));
  }
  std::sort(positive.begin(), positive.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return b < a;
  });
  roots_ = positive;
  for (const auto& r : positive) roots_.push_back(-r);
  for (std::size_t k = 0; k < roots_.size(); ++k) index_.emplace(roots_[k], k);
}

std::string RootSystem::name() const {
  return std::string(1, static_cast<char>(family_)) + std::to_string(rank_);
}

Root RootSystem::simple_root(int i) const {
  std::vector<int> e(rank_, 0);
  e[i] = 1;
  return Root(std::move(e));
}

std::optional<std::size_t> RootSystem::index_of(const Root& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::mult(const Root& r) const {
  auto idx = index_of(r);
  if (!idx) throw InputError("not a root of " + name() + ": " + r.str());
  return mult_[*idx];
}

RootSystem RootSystem::with_multiplicities(const std::map<Root, int>& mult) const {
  RootSystem out = *this;
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    auto it = mult.find(roots_[k]);
    if (it == mult.end()) throw InputError("multiplicity missing for root " + roots_[k].str());
    if (it->second <= 0) throw InputError("multiplicity must be positive for root " + roots_[k].str());
    out.mult_[k] = it->second;
  }
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    for (int i = 0; i < rank_; ++i) {
      Root image = reflect(simple_root(i), roots_[k]);
      if (out.mult(image) != out.mult_[k]) {
        throw InputError("multiplicities are not Weyl invariant: n" + roots_[k].str() +
                         " != n" + image.str());
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairing and evaluation

Rational RootSystem::inner(std::span<const int> a, std::span<const int> b) const {
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b[j] != 0) s += a[i] * b[j] * pairing(i, j);
    }
  }
  return s;
}

Rational RootSystem::inner(const RationalVector& a, std::span<const int> b) const {
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b[j] != 0) s += a[i] * b[j] * pairing(i, j);
    }
  }
  return s;
}

Root RootSystem::reflect(const Root& beta, const Root& alpha) const {
  if (!contains(beta)) throw InputError("reflection in a non-root " + beta.str());
  if (alpha.rank() != static_cast<std::size_t>(rank_)) throw InputError("rank mismatch in reflect");
  const auto c = to_int(2 * inner(alpha.coords(), beta.coords()) /
                        inner(beta.coords(), beta.coords()));
  std::vector<int> out(alpha.coords().begin(), alpha.coords().end());
  for (int i = 0; i < rank_; ++i) out[i] -= static_cast<int>(c) * beta[i];
  return Root(std::move(out));
}

std::vector<Root> RootSystem::span_subset(SimpleRootSet theta) const {
  check_subset(theta);
  std::vector<Root> out;
  for (const auto& r : roots_) {
    if (in_span(r, theta)) out.push_back(r);
  }
  return out;
}

Rational RootSystem::evaluate(std::span<const int> alpha, const AVector& h) const {
  if (alpha.size() != h.coords.size()) throw InputError("dimension mismatch in evaluate");
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (alpha[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += alpha[i] * pairing(i, j) * h.coords[j];
  }
  return s;
}

Rational RootSystem::evaluate(const RationalVector& functional, const AVector& h) const {
  if (functional.size() != h.coords.size()) throw InputError("dimension mismatch in evaluate");
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (functional[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += functional[i] * pairing(i, j) * h.coords[j];
  }
  return s;
}

SimpleRootSet RootSystem::characteristic_subset(const AVector& h) const {
  if (h.coords.size() != static_cast<std::size_t>(rank_)) {
    throw InputError("dimension mismatch in characteristic_subset");
  }
  std::uint32_t bits = 0;
  for (int i = 0; i < rank_; ++i) {
    const Rational v = evaluate(simple_root(i).coords(), h);
    if (v < 0) {
      throw InputError("H is outside the closed positive chamber: simple root " +
                       std::to_string(i) + " evaluates to " + v.str());
    }
    if (v == 0) bits |= 1u << i;
  }
  return SimpleRootSet(bits);
}

AVector RootSystem::from_simple_values(const RationalVector& values) const {
  if (values.size() != static_cast<std::size_t>(rank_)) throw InputError("dimension mismatch");
  const int n = rank_;
  // Gauss-Jordan on [P | values]; P is positive definite, so pivots never vanish.
  std::vector<RationalVector> m(n, RationalVector(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = pairing(i, j);
    m[i][n] = values[i];
  }
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (int k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  AVector h = AVector::zero(n);
  for (int i = 0; i < n; ++i) h.coords[i] = m[i][n] / m[i][i];
  return h;
}

void RootSystem::check_subset(SimpleRootSet theta) const {
  if ((theta.bits() >> rank_) != 0) {
    throw InputError("subset of simple roots out of range for " + name());
  }
}

}  // namespace flagctrl
