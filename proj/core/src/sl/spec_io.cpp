#include "flagctrl/sl/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "flagctrl/error.hpp"

namespace flagctrl::sl {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number, got " + j.dump());
  return j.get<double>();
}

Matrix matrix_from(const json& j, int d, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw InputError(where + ": expected " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw InputError(where + ": row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
    }
    for (int c = 0; c < d; ++c) m(r, c) = number(row[c], where);
  }
  return m;
}

json matrix_to(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SystemDocument system_from_json(const json& j) {
  if (!j.is_object()) throw InputError("system document must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw InputError("dim: missing or not an integer");
  SystemDocument doc;
  auto& spec = doc.spec;
  spec.dim = j["dim"].get<int>();
  if (spec.dim < 2) throw InputError("dim: must be at least 2");
  if (!j.contains("drift")) throw InputError("drift: missing");
  spec.drift = matrix_from(j["drift"], spec.dim, "drift");
  if (j.contains("controls")) {
    if (!j["controls"].is_array()) throw InputError("controls: expected a list of matrices");
    for (std::size_t i = 0; i < j["controls"].size(); ++i) {
      spec.controls.push_back(matrix_from(j["controls"][i], spec.dim, "controls[" + std::to_string(i) + "]"));
    }
  }
  const int m = spec.channels();
  spec.lower = Vector(m);
  spec.upper = Vector(m);
  if (m > 0) {
    if (!j.contains("range") || !j["range"].is_array() || static_cast<int>(j["range"].size()) != m) {
      throw InputError("range: expected one [lo, hi] pair per control matrix");
    }
    for (int i = 0; i < m; ++i) {
      const json& pair = j["range"][i];
      const std::string where = "range[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) throw InputError(where + ": expected [lo, hi]");
      spec.lower(i) = number(pair[0], where);
      spec.upper(i) = number(pair[1], where);
    }
  }
  if (j.contains("integrator")) {
    const json& integ = j["integrator"];
    if (!integ.is_object()) throw InputError("integrator: expected an object");
    if (integ.contains("dt")) spec.dt = number(integ["dt"], "integrator.dt");
    if (integ.contains("cadence")) {
      if (!integ["cadence"].is_number_integer()) throw InputError("integrator.cadence: expected an integer");
      spec.cadence = integ["cadence"].get<int>();
    }
  }
  if (j.contains("sample_period")) doc.sample_period = number(j["sample_period"], "sample_period");
  if (!(doc.sample_period > 0.0)) throw InputError("sample_period: must be positive");
  if (j.contains("constant_control")) {
    const json& u = j["constant_control"];
    if (!u.is_array() || static_cast<int>(u.size()) != m) {
      throw InputError("constant_control: expected " + std::to_string(m) + " values");
    }
    Vector v(m);
    for (int i = 0; i < m; ++i) v(i) = number(u[i], "constant_control");
    doc.constant_control = v;
  }
  spec.validate();
  if (doc.constant_control && !spec.in_range(*doc.constant_control)) {
    throw InputError("constant_control: outside the control range");
  }
  return doc;
}

SystemDocument load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open system file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("system file " + path + " is not valid JSON: " + e.what());
  }
  return system_from_json(j);
}

json to_json(const SystemDocument& doc) {
  const auto& spec = doc.spec;
  json controls = json::array();
  json range = json::array();
  for (int i = 0; i < spec.channels(); ++i) {
    controls.push_back(matrix_to(spec.controls[i]));
    range.push_back({spec.lower(i), spec.upper(i)});
  }
  json out{{"dim", spec.dim},
           {"drift", matrix_to(spec.drift)},
           {"controls", std::move(controls)},
           {"range", std::move(range)},
           {"integrator", {{"dt", spec.dt}, {"cadence", spec.cadence}}},
           {"sample_period", doc.sample_period}};
  if (doc.constant_control) {
    out["constant_control"] = std::vector<double>(doc.constant_control->begin(), doc.constant_control->end());
  }
  return out;
}

void write_csv(std::ostream& os, const CocycleSample& sample) {
  const auto d = sample.flag0.dim();
  os << 't';
  for (int i = 1; i <= d; ++i) os << ",a" << i;
  os << '\n';
  char buf[64];
  for (std::size_t k = 0; k < sample.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12e", sample.times[k] + 0.0);
    os << buf;
    for (int i = 0; i < d; ++i) {
      std::snprintf(buf, sizeof buf, "%.12e", sample.a_values[k](i) + 0.0);
      os << ',' << buf;
    }
    os << '\n';
  }
}

}  // namespace flagctrl::sl
