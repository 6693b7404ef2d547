#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "flagctrl/sl/control.hpp"

namespace flagctrl::sl {

/// A control system document:
///   {"dim": d, "drift": [[..]..], "controls": [[[..]..], ..],
///    "range": [[lo, hi], ..], "integrator": {"dt": .., "cadence": ..},
///    "sample_period": .., "constant_control": [..]}
/// Matrices are row-major. "controls", "range", "integrator", "sample_period"
/// and "constant_control" are optional.
struct SystemDocument {
  ControlSystemSpec spec;
  double sample_period = 0.1;
  std::optional<Vector> constant_control;
};

/// Throws InputError with the offending field on malformed input.
SystemDocument system_from_json(const nlohmann::json& j);
SystemDocument load_system(const std::string& path);
nlohmann::json to_json(const SystemDocument& doc);

/// CSV with header "t,a1,..,ad" and one row per sample, %.12e formatting.
void write_csv(std::ostream& os, const CocycleSample& sample);

}  // namespace flagctrl::sl
