#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

// Boost's mixed rational/integer equality recurses forever under C++20's
// reversed-operator rules. Exact non-template overloads take precedence.
namespace boost {
#define LCA_RATIONAL_EQ(T)                                                                 \
  inline bool operator==(const rational<std::int64_t>& a, T b) {                         \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);         \
  }                                                                                       \
  inline bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }         \
  inline bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); }      \
  inline bool operator!=(T b, const rational<std::int64_t>& a) { return !(a == b); }
LCA_RATIONAL_EQ(int)
LCA_RATIONAL_EQ(long)
LCA_RATIONAL_EQ(long long)
#undef LCA_RATIONAL_EQ
}  // namespace boost

namespace lca {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p", or a plain decimal such as "0.125" (converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Representative of r modulo 1 in [0, 1).
Rational frac(const Rational& r);

}  // namespace lca
