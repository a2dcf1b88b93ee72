#include "brp/scalar.hpp"

#include "brp/error.hpp"

#include <cctype>
#include <charconv>

namespace brp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  // A leading zero would make the string constructor read octal.
  while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);
  BigInt v{std::string(s)};
  if (negative) v = -v;
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string shown(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
      throw ValidationError("malformed rational '" + shown + "'");
    const BigInt d = parse_integer(den);
    if (d == 0) throw ValidationError("zero denominator in '" + shown + "'");
    return Rational(parse_integer(num), d);
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));
  // Plain decimal: sign, digits, '.', digits. Exponent notation is not accepted.
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) throw ValidationError("malformed rational '" + shown + "'");
  std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
  bool negative = false;
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
    negative = whole[0] == '-';
    whole.remove_prefix(1);
  }
  if (whole.empty() && frac.empty()) throw ValidationError("malformed rational '" + shown + "'");
  for (char c : std::string(whole) + std::string(frac))
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ValidationError("malformed rational '" + shown + "'");
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::string digits = std::string(whole) + std::string(frac);
  // A leading zero would make the string constructor read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  Rational q(BigInt(digits.empty() ? "0" : digits), scale);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace brp
