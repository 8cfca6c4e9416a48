#include "horo/scalar.hpp"

#include <charconv>

namespace horo {

std::int64_t to_int64(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::int64_t>::max()) ||
      v < BigInt(std::numeric_limits<std::int64_t>::min()))
    throw OverflowError("value does not fit in int64: " + v.str());
  return v.convert_to<std::int64_t>();
}

std::int64_t to_int64(const Rational& v) {
  if (!is_integer(v)) throw DomainError("expected an integer, got " + to_string(v));
  return to_int64(BigInt(numerator(v)));
}

bool is_integer(const Rational& v) { return denominator(v) == 1; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt floor(const Rational& v) { return floor_div(BigInt(numerator(v)), BigInt(denominator(v))); }
BigInt ceil(const Rational& v) { return ceil_div(BigInt(numerator(v)), BigInt(denominator(v))); }

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  if (is_integer(v)) return BigInt(numerator(v)).str();
  return BigInt(numerator(v)).str() + "/" + BigInt(denominator(v)).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9')
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return BigInt(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace horo
