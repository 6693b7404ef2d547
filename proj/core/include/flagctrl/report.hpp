#pragma once

// Canonical JSON documents for root systems, coset tables and chain control set reports.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flagctrl/flag_calculus.hpp"
#include "flagctrl/root_system.hpp"
#include "flagctrl/weyl_group.hpp"

namespace flagctrl {

/// Integers as JSON numbers, anything else as the string "p/q".
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RootSystem& rs);

/// {"left":[..], "right":[..], "cosets":[{"rep_word":[..], "size":n}, ...]}
nlohmann::json coset_table_json(const WeylGroup& weyl, SimpleRootSet left, SimpleRootSet right);

/// {lie_type, theta, flag_type, records:[{coset_rep_word, s, c, u, hyperbolic,
///  sigma_plus, sigma_minus, attractor, repeller, coset_size, dim_flag}]}
/// sigma_plus / sigma_minus are null for non-hyperbolic records.
nlohmann::json chain_control_report(const RootSystem& rs, const FlagSpec& spec,
                                    const std::vector<ChainControlSetRecord>& records);

}  // namespace flagctrl
