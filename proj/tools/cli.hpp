#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "flagctrl/root_system.hpp"

namespace flagctrl::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

enum class Format { Json, Table };

struct AnalyzeRequest {
  Family family = Family::A;
  int rank = 1;
  SimpleRootSet theta;
  SimpleRootSet flag_type;
  Format format = Format::Json;
};

struct VerifyRequest {
  std::string spec_path;
  SimpleRootSet theta;
  /// Reduced or unreduced word of a coset member; empty optional selects all cosets.
  std::optional<std::vector<int>> w;
  double horizon = 20.0;
  double tol = 1e-6;
  std::optional<double> dt;
  Format format = Format::Json;
};

struct SimulateRequest {
  std::string spec_path;
  std::uint64_t seed = 0;
  double horizon = 10.0;
  std::optional<double> dt;
};

struct CommandResult {
  int exit_code = kPass;
  std::string out;
  std::string err;
};

/// Comma-separated simple-root indices, empty string for the empty set.
SimpleRootSet parse_subset(std::string_view text, int rank);
std::vector<int> parse_word(std::string_view text);

CommandResult cmd_analyze(const AnalyzeRequest& req);
CommandResult cmd_verify(const VerifyRequest& req);
CommandResult cmd_simulate(const SimulateRequest& req);

/// Table rendering of an analyze report and its inverse.
std::string analyze_table(const nlohmann::json& report);
nlohmann::json parse_analyze_table(std::string_view text);

/// "path = value" rendering of any report (JSON pointer paths) and its inverse.
std::string flat_table(const nlohmann::json& report);
nlohmann::json parse_flat_table(std::string_view text);

/// Full command line entry point; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flagctrl::cli
