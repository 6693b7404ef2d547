#include "flagctrl/report.hpp"

#include "flagctrl/error.hpp"

namespace flagctrl {

using nlohmann::json;

json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) return static_cast<std::int64_t>(numerator(q));
  return q.str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
      // fall through to the error below
    }
  }
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

namespace {

json rational_vector_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

}  // namespace

json to_json(const RootSystem& rs) {
  const int n = rs.rank();
  json cartan = json::array();
  json pairing = json::array();
  for (int i = 0; i < n; ++i) {
    json crow = json::array();
    json prow = json::array();
    for (int j = 0; j < n; ++j) {
      crow.push_back(rs.cartan(i, j));
      prow.push_back(rational_to_json(rs.pairing(i, j)));
    }
    cartan.push_back(std::move(crow));
    pairing.push_back(std::move(prow));
  }
  json roots = json::array();
  json mult = json::array();
  for (std::size_t k = 0; k < rs.roots().size(); ++k) {
    const auto c = rs.roots()[k].coords();
    roots.push_back(std::vector<int>(c.begin(), c.end()));
    mult.push_back(rs.mult(k));
  }
  return json{{"family", std::string(1, static_cast<char>(rs.family()))},
              {"rank", n},
              {"cartan", std::move(cartan)},
              {"pairing", std::move(pairing)},
              {"positive_root_count", rs.positive_roots().size()},
              {"roots", std::move(roots)},
              {"mult", std::move(mult)}};
}

json coset_table_json(const WeylGroup& weyl, SimpleRootSet left, SimpleRootSet right) {
  json cosets = json::array();
  for (const auto& c : weyl.double_cosets(left, right)) {
    cosets.push_back({{"rep_word", weyl.element(c.rep).reduced_word()}, {"size", c.members.size()}});
  }
  return json{{"lie_type", weyl.root_system().name()},
              {"left", left.indices()},
              {"right", right.indices()},
              {"cosets", std::move(cosets)}};
}

json chain_control_report(const RootSystem& rs, const FlagSpec& spec,
                          const std::vector<ChainControlSetRecord>& records) {
  json out_records = json::array();
  for (const auto& rec : records) {
    json r;
    r["coset_rep_word"] = rec.w.reduced_word();
    r["coset_size"] = rec.coset.members.size();
    r["dim_flag"] = rec.dim_flag;
    r["s"] = rec.dims.stable;
    r["c"] = rec.dims.center;
    r["u"] = rec.dims.unstable;
    r["hyperbolic"] = rec.hyperbolic;
    r["sigma_plus"] = rec.sigma_plus ? rational_vector_json(*rec.sigma_plus) : json(nullptr);
    r["sigma_minus"] = rec.sigma_minus ? rational_vector_json(*rec.sigma_minus) : json(nullptr);
    r["attractor"] = rec.is_attractor;
    r["repeller"] = rec.is_repeller;
    out_records.push_back(std::move(r));
  }
  return json{{"lie_type", rs.name()},
              {"theta", spec.theta.indices()},
              {"flag_type", spec.flag_type.indices()},
              {"records", std::move(out_records)}};
}

}  // namespace flagctrl
