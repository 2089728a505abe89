#include "lca/rational.hpp"

#include "lca/error.hpp"

#include <charconv>
#include <string>

namespace lca {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (frac_part.size() > 17) throw Error(ErrorCode::ParseError, "too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    std::int64_t whole = (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, text);
    std::int64_t digits = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (digits < 0) throw Error(ErrorCode::ParseError, "malformed decimal '" + std::string(text) + "'");
    Rational r(whole);
    Rational tail(digits, scale);
    return negative ? r - tail : r + tail;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational frac(const Rational& r) {
  std::int64_t num = r.numerator() % r.denominator();
  if (num < 0) num += r.denominator();
  return Rational(num, r.denominator());
}

}  // namespace lca
