#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flagctrl {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

inline std::string to_string(const Rational& q) { return q.str(); }

inline bool is_zero(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace flagctrl
