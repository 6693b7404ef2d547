#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "flagctrl/error.hpp"
#include "flagctrl/flag_calculus.hpp"
#include "flagctrl/report.hpp"
#include "flagctrl/sl/cocycle.hpp"
#include "flagctrl/sl/spec_io.hpp"
#include "flagctrl/sl/verify.hpp"

namespace flagctrl::cli {

using nlohmann::json;

namespace {

constexpr double kFixednessTol = 1e-9;
constexpr int kDiagnosticSamples = 4;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("invalid " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string subset_text(SimpleRootSet s) { return join(s.indices()); }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "table") return Format::Table;
  throw InputError("unknown format '" + s + "' (expected json or table)");
}

std::string render(const json& report, Format format, bool analyze) {
  if (format == Format::Json) return report.dump(2) + "\n";
  return analyze ? analyze_table(report) : flat_table(report);
}

std::string rational_cell(const json& q) { return q.is_string() ? q.get<std::string>() : std::to_string(q.get<long long>()); }

json rational_from_cell(const std::string& s) {
  if (s.find('/') != std::string::npos) return s;
  return static_cast<std::int64_t>(parse_int(s, "rational"));
}

std::string vector_cell(const json& v) {
  if (v.is_null()) return "-";
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += rational_cell(v[i]);
  }
  return out + "]";
}

json vector_from_cell(const std::string& s) {
  if (s == "-") return nullptr;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("malformed vector cell '" + s + "'");
  json out = json::array();
  const std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return out;
  for (const auto& part : split(body, ',')) out.push_back(rational_from_cell(part));
  return out;
}

std::string word_cell(const json& word) {
  if (word.empty()) return "-";
  return join(word.get<std::vector<int>>());
}

json word_from_cell(const std::string& s) {
  if (s == "-") return json::array();
  json out = json::array();
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, "word letter"));
  return out;
}

json list_from_header(const std::string& s) {
  json out = json::array();
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, "index"));
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

bool bool_from_cell(const std::string& s) {
  if (s == "yes") return true;
  if (s == "no") return false;
  throw InputError("malformed boolean cell '" + s + "'");
}

const std::vector<std::string> kColumns = {"rep_word", "coset_size", "dim_flag", "s", "c", "u", "hyperbolic",
                                           "sigma_plus", "sigma_minus", "attractor", "repeller"};

json read_double_vector(const sl::Vector& v) { return std::vector<double>(v.begin(), v.end()); }

}  // namespace

SimpleRootSet parse_subset(std::string_view text, int rank) {
  const std::string t = trim(text);
  if (t.empty()) return SimpleRootSet();
  std::vector<int> idx;
  for (const auto& part : split(t, ',')) {
    const int i = parse_int(part, "simple root index");
    if (i < 0 || i >= rank) {
      throw InputError("simple root index " + std::to_string(i) + " outside [0, " + std::to_string(rank) + ")");
    }
    idx.push_back(i);
  }
  return SimpleRootSet::of(idx);
}

std::vector<int> parse_word(std::string_view text) {
  const std::string t = trim(text);
  std::vector<int> word;
  if (t.empty()) return word;
  for (const auto& part : split(t, ',')) word.push_back(parse_int(part, "word letter"));
  return word;
}

// ---------------------------------------------------------------------------
// Tables

std::string analyze_table(const json& report) {
  std::vector<std::vector<std::string>> rows{kColumns};
  for (const auto& r : report["records"]) {
    rows.push_back({word_cell(r["coset_rep_word"]), std::to_string(r["coset_size"].get<int>()),
                    std::to_string(r["dim_flag"].get<int>()), std::to_string(r["s"].get<int>()),
                    std::to_string(r["c"].get<int>()), std::to_string(r["u"].get<int>()),
                    yes_no(r["hyperbolic"].get<bool>()), vector_cell(r["sigma_plus"]), vector_cell(r["sigma_minus"]),
                    yes_no(r["attractor"].get<bool>()), yes_no(r["repeller"].get<bool>())});
  }
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  os << "# lie_type: " << report["lie_type"].get<std::string>() << '\n';
  os << "# theta: " << join(report["theta"].get<std::vector<int>>()) << '\n';
  os << "# flag_type: " << join(report["flag_type"].get<std::vector<int>>()) << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 == row.size()) {
        os << row[c];
      } else {
        os << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
      }
    }
    os << '\n';
  }
  return os.str();
}

json parse_analyze_table(std::string_view text) {
  json report;
  json records = json::array();
  bool header_seen = false;
  for (const auto& line : split(text, '\n')) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw InputError("malformed header line '" + line + "'");
      const std::string key = trim(std::string_view(line).substr(2, colon - 2));
      const std::string value = trim(std::string_view(line).substr(colon + 1));
      if (key == "lie_type") {
        report["lie_type"] = value;
      } else {
        report[key] = list_from_header(value);
      }
      continue;
    }
    std::istringstream is(line);
    std::vector<std::string> cells;
    for (std::string cell; is >> cell;) cells.push_back(cell);
    if (!header_seen) {
      if (cells != kColumns) throw InputError("unexpected table header '" + line + "'");
      header_seen = true;
      continue;
    }
    if (cells.size() != kColumns.size()) throw InputError("malformed table row '" + line + "'");
    json r;
    r["coset_rep_word"] = word_from_cell(cells[0]);
    r["coset_size"] = parse_int(cells[1], "coset_size");
    r["dim_flag"] = parse_int(cells[2], "dim_flag");
    r["s"] = parse_int(cells[3], "s");
    r["c"] = parse_int(cells[4], "c");
    r["u"] = parse_int(cells[5], "u");
    r["hyperbolic"] = bool_from_cell(cells[6]);
    r["sigma_plus"] = vector_from_cell(cells[7]);
    r["sigma_minus"] = vector_from_cell(cells[8]);
    r["attractor"] = bool_from_cell(cells[9]);
    r["repeller"] = bool_from_cell(cells[10]);
    records.push_back(std::move(r));
  }
  report["records"] = std::move(records);
  return report;
}

namespace {

void flatten_into(const json& value, const std::string& path, std::ostringstream& os) {
  if ((value.is_object() || value.is_array()) && !value.empty()) {
    if (value.is_object()) {
      for (const auto& [key, child] : value.items()) flatten_into(child, path + "/" + key, os);
    } else {
      for (std::size_t i = 0; i < value.size(); ++i) flatten_into(value[i], path + "/" + std::to_string(i), os);
    }
    return;
  }
  os << path << " = " << value.dump() << '\n';
}

}  // namespace

std::string flat_table(const json& report) {
  std::ostringstream os;
  flatten_into(report, "", os);
  return os.str();
}

json parse_flat_table(std::string_view text) {
  json out;
  for (const auto& line : split(text, '\n')) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw InputError("malformed line '" + line + "'");
    try {
      out[json::json_pointer(line.substr(0, eq))] = json::parse(line.substr(eq + 3));
    } catch (const json::exception&) {
      throw InputError("malformed line '" + line + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_analyze(const AnalyzeRequest& req) {
  const RootSystem rs = RootSystem::build(req.family, req.rank);
  const FlagSpec spec{req.theta, req.flag_type};
  rs.check_subset(spec.theta);
  rs.check_subset(spec.flag_type);
  spdlog::info("analyze {} theta={{{}}} flag_type={{{}}}", rs.name(), subset_text(spec.theta),
               subset_text(spec.flag_type));
  const WeylGroup weyl = WeylGroup::generate(rs);
  const auto records = enumerate_chain_control_sets(weyl, spec);
  spdlog::info("{} chain control sets", records.size());
  return {kPass, render(chain_control_report(rs, spec, records), req.format, true), {}};
}

CommandResult cmd_verify(const VerifyRequest& req) {
  sl::SystemDocument doc = sl::load_system(req.spec_path);
  if (req.dt) {
    doc.spec.dt = *req.dt;
    doc.spec.validate();
  }
  if (!(req.horizon >= 1.0)) throw InputError("--T must be at least 1 for rate checks");
  if (!(req.tol > 0.0)) throw InputError("--tol must be positive");
  const int d = doc.spec.dim;
  const RootSystem rs = RootSystem::build(Family::A, d - 1);
  rs.check_subset(req.theta);
  const WeylGroup weyl = WeylGroup::generate(rs);
  const sl::Vector u = doc.constant_control.value_or(sl::Vector::Zero(doc.spec.channels()));
  const sl::Matrix x = doc.spec.generator(u);
  const sl::SplitPart split = sl::split_part(x);
  const FlagSpec spec{req.theta, split.theta};
  spdlog::info("verify A{} theta={{{}}} flag_type={{{}}}", d - 1, subset_text(spec.theta), subset_text(spec.flag_type));

  auto records = enumerate_chain_control_sets(weyl, spec);
  if (req.w) {
    const std::size_t target = weyl.from_word(*req.w);
    std::erase_if(records, [target](const ChainControlSetRecord& r) {
      return !std::binary_search(r.coset.members.begin(), r.coset.members.end(), target);
    });
  }

  bool all_pass = true;
  json out_records = json::array();
  for (const auto& rec : records) {
    json r;
    r["coset_rep_word"] = rec.w.reduced_word();
    r["hyperbolic"] = rec.hyperbolic;
    r["s"] = rec.dims.stable;
    r["c"] = rec.dims.center;
    r["u"] = rec.dims.unstable;

    const double fixed = sl::fixedness_residual(x, weyl, spec, rec.w, {1, 2, 3, 4, 5}, doc.spec.dt);
    bool pass = fixed <= kFixednessTol;
    r["fixedness"] = {{"residual", fixed}, {"tolerance", kFixednessTol}, {"pass", fixed <= kFixednessTol}};

    if (!rec.hyperbolic) {
      const auto bounds = sl::center_norm_bounds(x, weyl, spec, rec, 5.0, 0.5, doc.spec.dt);
      r["center_norm_bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
      r["status"] = pass ? "skipped (non-hyperbolic)" : "fail";
      all_pass = all_pass && pass;
      out_records.push_back(std::move(r));
      continue;
    }

    json dets = json::array();
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      for (double t : {0.5, 1.0, 2.0}) {
        const auto check = sl::determinant_check(x, weyl, spec, rec, sign, t, doc.spec.dt);
        const bool ok = check.relative_error <= req.tol;
        pass = pass && ok;
        dets.push_back({{"sign", sign == Sign::Plus ? "unstable" : "stable"},
                        {"t", t},
                        {"numeric", check.numeric},
                        {"predicted", check.predicted},
                        {"relative_error", check.relative_error},
                        {"pass", ok}});
      }
    }
    r["determinant"] = std::move(dets);

    sl::RateOptions opts;
    opts.horizon = req.horizon;
    opts.dt = doc.spec.dt;
    const auto rates = sl::verify_rates(x, weyl, spec, rec, opts);
    pass = pass && rates.passed;
    json slopes = json::array();
    for (const auto& s : rates.attractor_slopes) {
      slopes.push_back({{"root", std::vector<int>(s.root.coords().begin(), s.root.coords().end())},
                        {"predicted", s.predicted},
                        {"min_slope", s.min_slope}});
    }
    r["rates"] = {{"attractor_slopes", std::move(slopes)},
                  {"mu", rates.mu},
                  {"bound", rates.bound},
                  {"predicted_unstable", rates.predicted_unstable},
                  {"observed_unstable", rates.observed_unstable},
                  {"predicted_stable", rates.predicted_stable},
                  {"observed_stable", rates.observed_stable},
                  {"max_relative_error", rates.max_relative_error},
                  {"tolerance", opts.relative_tol},
                  {"pass", rates.passed}};
    r["status"] = pass ? "pass" : "fail";
    all_pass = all_pass && pass;
    out_records.push_back(std::move(r));
  }

  json report{{"lie_type", rs.name()},
              {"theta", spec.theta.indices()},
              {"flag_type", spec.flag_type.indices()},
              {"h", read_double_vector(split.h)},
              {"tolerance", req.tol},
              {"T", req.horizon},
              {"records", std::move(out_records)},
              {"pass", all_pass}};
  return {all_pass ? kPass : kVerificationFailure, render(report, req.format, false), {}};
}

CommandResult cmd_simulate(const SimulateRequest& req) {
  sl::SystemDocument doc = sl::load_system(req.spec_path);
  if (req.dt) {
    doc.spec.dt = *req.dt;
    doc.spec.validate();
  }
  if (!(req.horizon > 0.0) || !std::isfinite(req.horizon)) throw InputError("--T must be positive");
  const int d = doc.spec.dim;
  const sl::FlagPoint flag0 = sl::FlagPoint::standard(d, std::vector<int>(d, 1));
  auto control_for = [&](std::uint64_t seed) {
    if (doc.constant_control) return sl::ControlSignal::constant(*doc.constant_control);
    return sl::ControlSignal::random(doc.spec, doc.sample_period, req.horizon, seed);
  };

  const sl::CocycleSample sample =
      sl::sample_cocycle(doc.spec, control_for(req.seed), req.horizon, flag0, doc.sample_period);
  std::ostringstream csv;
  sl::write_csv(csv, sample);

  // Flag type diagnostic: slope intervals of alpha_i(a(T))/T over a few controls.
  const int samples = doc.constant_control ? 1 : kDiagnosticSamples;
  std::vector<double> lo(d - 1, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d - 1, -std::numeric_limits<double>::infinity());
  for (int k = 0; k < samples; ++k) {
    const sl::Vector a = k == 0 ? sample.a_values.back()
                                : sl::sample_cocycle(doc.spec, control_for(req.seed + k), req.horizon, flag0,
                                                     req.horizon)
                                      .a_values.back();
    for (int i = 0; i < d - 1; ++i) {
      const double slope = (a(i) - a(i + 1)) / req.horizon;
      lo[i] = std::min(lo[i], slope);
      hi[i] = std::max(hi[i], slope);
    }
  }
  json intervals = json::array();
  std::vector<int> central;
  for (int i = 0; i < d - 1; ++i) {
    intervals.push_back({lo[i], hi[i]});
    if (lo[i] <= 0.0 && hi[i] >= 0.0) central.push_back(i);
  }
  json diagnostic{{"diagnostic", "flag type estimate from alpha_i(a(T))/T; no soundness claim"},
                  {"samples", samples},
                  {"seed", req.seed},
                  {"T", req.horizon},
                  {"slope_intervals", std::move(intervals)},
                  {"central", central}};
  return {kPass, csv.str(), diagnostic.dump() + "\n"};
}

// ---------------------------------------------------------------------------
// Entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl group classification of chain control sets, with numerical checks in SL(d)"};
  app.require_subcommand(1);

  std::string type = "A";
  int rank = 1;
  std::string theta;
  std::string flagtype;
  std::string format = "json";
  auto* analyze = app.add_subcommand("analyze", "Classify the chain control sets for a Lie type");
  analyze->add_option("--type", type, "Dynkin family letter")->required();
  analyze->add_option("--rank", rank, "Rank")->required();
  analyze->add_option("--theta", theta, "Flag manifold subset, e.g. \"0,2\"");
  analyze->add_option("--flagtype", flagtype, "Flag type of the flow");
  analyze->add_option("--format", format, "json or table");

  std::string spec_path;
  std::string word = "all";
  double horizon = 0.0;
  double tol = 1e-6;
  double dt = 0.0;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Numerically verify the predictions for an SL(d) system");
  verify->add_option("--spec", spec_path, "System JSON file")->required();
  verify->add_option("--theta", theta, "Flag manifold subset");
  verify->add_option("--w", word, "Coset member word, e.g. \"0,1\", or \"all\"");
  verify->add_option("--T", horizon, "Horizon for the rate checks (default 20)");
  verify->add_option("--tol", tol, "Relative tolerance of the determinant checks");
  verify->add_option("--dt", dt, "Integrator step (overrides the spec)");
  verify->add_option("--format", format, "json or table");

  auto* simulate = app.add_subcommand("simulate", "Sample the a-cocycle along a random control");
  simulate->add_option("--spec", spec_path, "System JSON file")->required();
  simulate->add_option("--seed", seed, "Control seed");
  simulate->add_option("--T", horizon, "Horizon (default 10)");
  simulate->add_option("--dt", dt, "Integrator step (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  CommandResult result;
  try {
    if (*analyze) {
      AnalyzeRequest req;
      req.family = parse_family(type);
      req.rank = rank;
      const RootSystem rs = RootSystem::build(req.family, rank);
      req.theta = parse_subset(theta, rs.rank());
      req.flag_type = parse_subset(flagtype, rs.rank());
      req.format = parse_format(format);
      result = cmd_analyze(req);
    } else if (*verify) {
      VerifyRequest req;
      req.spec_path = spec_path;
      const int d = sl::load_system(spec_path).spec.dim;
      req.theta = parse_subset(theta, d - 1);
      if (trim(word) != "all") req.w = parse_word(word);
      if (verify->count("--T")) req.horizon = horizon;
      req.tol = tol;
      if (verify->count("--dt")) req.dt = dt;
      req.format = parse_format(format);
      result = cmd_verify(req);
    } else {
      SimulateRequest req;
      req.spec_path = spec_path;
      req.seed = seed;
      if (simulate->count("--T")) req.horizon = horizon;
      if (simulate->count("--dt")) req.dt = dt;
      result = cmd_simulate(req);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapacityError& e) {
    err << "input error: " << e.what() << " (stopped at " << e.partial_count() << " elements)\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  out << result.out;
  err << result.err;
  return result.exit_code;
}

}  // namespace flagctrl::cli
