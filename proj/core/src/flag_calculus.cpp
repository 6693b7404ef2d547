#include "flagctrl/flag_calculus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "flagctrl/error.hpp"

namespace flagctrl {

namespace {

void check_spec(const RootSystem& rs, const FlagSpec& spec) {
  rs.check_subset(spec.theta);
  rs.check_subset(spec.flag_type);
}

std::string roots_str(const std::vector<Root>& roots) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) os << ' ';
    os << roots[i].str();
  }
  os << '}';
  return os.str();
}

std::string subset_str(SimpleRootSet s) {
  std::ostringstream os;
  os << '{';
  const auto idx = s.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ',';
    os << idx[i];
  }
  os << '}';
  return os.str();
}

int mult_sum(const RootSystem& rs, const std::vector<Root>& roots) {
  int s = 0;
  for (const auto& r : roots) s += rs.mult(r);
  return s;
}

}  // namespace

int flag_dim(const RootSystem& rs, SimpleRootSet theta) {
  rs.check_subset(theta);
  int d = 0;
  for (const auto& alpha : rs.positive_roots()) {
    if (!rs.in_span(alpha, theta)) d += rs.mult(alpha);
  }
  return d;
}

PiSets pi_sets(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w) {
  const RootSystem& rs = weyl.root_system();
  check_spec(rs, spec);
  PiSets out;
  for (const auto& beta : rs.negative_roots()) {
    if (rs.in_span(beta, spec.theta)) continue;
    Root image = weyl.act(w, beta);
    if (rs.in_span(image, spec.flag_type)) {
      out.center.push_back(std::move(image));
    } else if (image.is_positive()) {
      out.plus.push_back(std::move(image));
    } else {
      out.minus.push_back(std::move(image));
    }
  }
  auto by_index = [&rs](const Root& a, const Root& b) { return *rs.index_of(a) < *rs.index_of(b); };
  std::sort(out.plus.begin(), out.plus.end(), by_index);
  std::sort(out.minus.begin(), out.minus.end(), by_index);
  std::sort(out.center.begin(), out.center.end(), by_index);
  return out;
}

SubbundleDims subbundle_dims(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w) {
  const RootSystem& rs = weyl.root_system();
  const PiSets sets = pi_sets(weyl, spec, w);
  SubbundleDims dims{mult_sum(rs, sets.minus), mult_sum(rs, sets.center), mult_sum(rs, sets.plus)};
  if (dims.total() != flag_dim(rs, spec.theta)) {
    throw InternalError("subbundle dimensions do not add up to dim F_theta for w = [" +
                        w.word_string() + "]");
  }
  return dims;
}

bool span_condition(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w) {
  const RootSystem& rs = weyl.root_system();
  check_spec(rs, spec);
  std::set<Root> image;
  for (const auto& beta : rs.span_subset(spec.theta)) image.insert(weyl.act(w, beta));
  for (const auto& alpha : rs.span_subset(spec.flag_type)) {
    if (!image.contains(alpha)) return false;
  }
  return true;
}

bool is_hyperbolic(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w) {
  const bool by_span = span_condition(weyl, spec, w);
  const PiSets sets = pi_sets(weyl, spec, w);
  const bool by_center = sets.center.empty();
  if (by_span != by_center) {
    std::ostringstream os;
    os << "hyperbolicity routes disagree for " << weyl.root_system().name()
       << " theta=" << subset_str(spec.theta) << " flag_type=" << subset_str(spec.flag_type)
       << " w=[" << w.word_string() << "]: span condition " << by_span << ", center set "
       << roots_str(sets.center) << " (plus " << roots_str(sets.plus) << ", minus "
       << roots_str(sets.minus) << ")";
    throw InternalError(os.str());
  }
  return by_span;
}

RationalVector root_sum(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w, Sign sign) {
  const RootSystem& rs = weyl.root_system();
  const PiSets sets = pi_sets(weyl, spec, w);
  const auto& roots = sign == Sign::Plus ? sets.plus : sets.minus;
  RationalVector sum(rs.rank(), 0);
  for (const auto& alpha : roots) {
    const int n = rs.mult(alpha);
    for (int i = 0; i < rs.rank(); ++i) sum[i] += n * alpha[i];
  }
  return sum;
}

SimpleRootSet annihilated_simple_roots(const WeylGroup& weyl, const FlagSpec& spec,
                                       const WeylElement& w) {
  const RootSystem& rs = weyl.root_system();
  check_spec(rs, spec);
  const std::size_t winv = weyl.inverse(weyl.index_of(w));
  std::uint32_t bits = 0;
  for (int i : spec.flag_type.indices()) {
    const Root pre = weyl.act(weyl.element(winv), rs.simple_root(i));
    if (rs.in_span(pre, spec.theta)) bits |= 1u << i;
  }
  return SimpleRootSet(bits);
}

RationalVector sigma_functional(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w,
                                Sign sign) {
  if (!is_hyperbolic(weyl, spec, w)) {
    throw InputError("sigma functionals are only defined when <flag_type> is contained in w<theta> "
                     "(w = [" + w.word_string() + "] is not hyperbolic)");
  }
  const RootSystem& rs = weyl.root_system();
  RationalVector sigma = root_sum(weyl, spec, w, sign);
  for (int i : annihilated_simple_roots(weyl, spec, w).indices()) {
    const Rational v = rs.evaluate(sigma, AVector::coroot(rs.rank(), i));
    if (v != 0) {
      throw InternalError("sigma does not annihilate the coroot of simple root " + std::to_string(i) +
                          " (value " + v.str() + ") for w = [" + w.word_string() + "]");
    }
  }
  return sigma;
}

std::vector<ChainControlSetRecord> enumerate_chain_control_sets(const WeylGroup& weyl,
                                                                const FlagSpec& spec) {
  const RootSystem& rs = weyl.root_system();
  check_spec(rs, spec);
  const int dim = flag_dim(rs, spec.theta);
  std::vector<ChainControlSetRecord> records;
  for (auto& coset : weyl.double_cosets(spec.flag_type, spec.theta)) {
    const WeylElement& w = weyl.element(coset.rep);
    ChainControlSetRecord rec{std::move(coset), w, dim, {}, false, std::nullopt, std::nullopt};
    rec.dims = subbundle_dims(weyl, spec, w);
    rec.hyperbolic = is_hyperbolic(weyl, spec, w);
    if (rec.hyperbolic) {
      rec.sigma_plus = sigma_functional(weyl, spec, w, Sign::Plus);
      rec.sigma_minus = sigma_functional(weyl, spec, w, Sign::Minus);
    }
    rec.is_attractor = rec.dims.unstable == 0;
    rec.is_repeller = rec.dims.stable == 0;
    records.push_back(std::move(rec));
  }

  // The attractor is the coset of 1 and the repeller the coset of w0; cross-check
  // against the u = 0 / s = 0 criteria.
  int attractors = 0;
  int repellers = 0;
  for (const auto& rec : records) {
    const auto& m = rec.coset.members;
    const bool has_identity = std::binary_search(m.begin(), m.end(), std::size_t{0});
    const bool has_longest = std::binary_search(m.begin(), m.end(), weyl.longest_index());
    if (rec.is_attractor != has_identity || rec.is_repeller != has_longest) {
      throw InternalError("attractor/repeller detection disagrees with coset membership for w = [" +
                          rec.w.word_string() + "]");
    }
    attractors += rec.is_attractor;
    repellers += rec.is_repeller;
  }
  if (attractors != 1 || repellers != 1) {
    throw InternalError("expected exactly one attractor and one repeller, found " +
                        std::to_string(attractors) + " and " + std::to_string(repellers));
  }
  return records;
}

bool representative_invariance_check(const WeylGroup& weyl, const FlagSpec& spec,
                                     const WeylElement& w, const WeylElement& w1,
                                     const WeylElement& w2) {
  const auto left = weyl.subgroup(spec.flag_type);
  const auto right = weyl.subgroup(spec.theta);
  if (!std::binary_search(left.begin(), left.end(), weyl.index_of(w1))) {
    throw InputError("w1 = [" + w1.word_string() + "] is not in W_{flag_type}");
  }
  if (!std::binary_search(right.begin(), right.end(), weyl.index_of(w2))) {
    throw InputError("w2 = [" + w2.word_string() + "] is not in W_theta");
  }
  const std::size_t other_index =
      weyl.multiply(weyl.multiply(weyl.index_of(w1), weyl.index_of(w)), weyl.index_of(w2));
  const WeylElement& other = weyl.element(other_index);

  const bool hyp = is_hyperbolic(weyl, spec, w);
  if (hyp != is_hyperbolic(weyl, spec, other)) return false;
  if (!hyp) return true;

  const RootSystem& rs = weyl.root_system();
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    const RationalVector a = sigma_functional(weyl, spec, w, sign);
    const RationalVector b = sigma_functional(weyl, spec, other, sign);
    for (int j = 0; j < rs.rank(); ++j) {
      const AVector h = AVector::coroot(rs.rank(), j);
      if (rs.evaluate(a, h) != rs.evaluate(b, h)) return false;
    }
  }
  return true;
}

}  // namespace flagctrl
