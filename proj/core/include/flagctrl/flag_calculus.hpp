#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagctrl/root_system.hpp"
#include "flagctrl/weyl_group.hpp"

namespace flagctrl {

/// A flag manifold F_theta together with the flag type Theta(phi) of the flow.
struct FlagSpec {
  SimpleRootSet theta;
  SimpleRootSet flag_type;
};

/// The roots of w(Pi- \ <theta>) split by where they sit relative to the flag type:
///   plus   = (Pi+ \ <flag_type>) cap w(Pi- \ <theta>)   unstable directions
///   minus  = (Pi- \ <flag_type>) cap w(Pi- \ <theta>)   stable directions
///   center = <flag_type> cap w(Pi- \ <theta>)
struct PiSets {
  std::vector<Root> plus;
  std::vector<Root> minus;
  std::vector<Root> center;
};

struct SubbundleDims {
  int stable = 0;
  int center = 0;
  int unstable = 0;

  int total() const { return stable + center + unstable; }
  bool operator==(const SubbundleDims&) const = default;
};

enum class Sign { Plus, Minus };

/// One chain control set E_{theta,w}, identified by its double coset.
struct ChainControlSetRecord {
  DoubleCoset coset;
  WeylElement w;
  int dim_flag = 0;
  SubbundleDims dims;
  bool hyperbolic = false;
  /// Present iff hyperbolic; simple-root coordinates of a*.
  std::optional<RationalVector> sigma_plus;
  std::optional<RationalVector> sigma_minus;
  bool is_attractor = false;
  bool is_repeller = false;
};

/// dim F_theta = sum of n_alpha over Pi+ \ <theta>.
int flag_dim(const RootSystem& rs, SimpleRootSet theta);

PiSets pi_sets(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w);

SubbundleDims subbundle_dims(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w);

/// <flag_type> is contained in w<theta>, evaluated directly on root sets.
bool span_condition(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w);

/// Hyperbolicity verdict. Computes both the span condition and emptiness of
/// the center set and throws InternalError with a dump of both if they differ.
bool is_hyperbolic(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w);

/// sum of n_alpha alpha over the plus or minus set, with no precondition.
/// For non-hyperbolic w the value depends on the chosen representative.
RationalVector root_sum(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w, Sign sign);

/// sigma^{+-}_{theta,w}. Requires a hyperbolic (spec, w), otherwise InputError.
/// Checks that the result annihilates a(flag_type cap w<theta>) and throws
/// InternalError if it does not.
RationalVector sigma_functional(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w,
                                Sign sign);

/// Simple roots of flag_type that lie in w<theta>; their coroots span a(flag_type cap w<theta>).
SimpleRootSet annihilated_simple_roots(const WeylGroup& weyl, const FlagSpec& spec,
                                       const WeylElement& w);

/// One record per double coset in W_{flag_type} \ W / W_theta, ordered by representative.
std::vector<ChainControlSetRecord> enumerate_chain_control_sets(const WeylGroup& weyl,
                                                                const FlagSpec& spec);

/// Compares hyperbolicity and sigma+- (as functionals on the coroot basis)
/// between w and w1 w w2. Requires w1 in W_{flag_type} and w2 in W_theta.
/// For a non-hyperbolic w only the verdicts are compared.
bool representative_invariance_check(const WeylGroup& weyl, const FlagSpec& spec,
                                     const WeylElement& w, const WeylElement& w1,
                                     const WeylElement& w2);

}  // namespace flagctrl
