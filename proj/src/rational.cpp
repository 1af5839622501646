#include "belgames/rational.hpp"

#include <cctype>

#include "belgames/errors.hpp"

namespace belgames {

namespace {

bool is_integer_token(std::string_view s, bool allowSign) {
  if (s.empty()) return false;
  std::size_t start = 0;
  if (allowSign && (s[0] == '-' || s[0] == '+')) start = 1;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  std::string_view numPart = text.substr(0, slash);
  if (!is_integer_token(numPart, true)) {
    throw ValidationError("not a rational literal: '" + std::string(text) +
                          "' (expected forms: \"3/4\", \"-2\", \"10\")");
  }
  if (numPart[0] == '+') numPart.remove_prefix(1);
  const BigInt num{std::string(numPart)};
  if (slash == std::string_view::npos) return Rational(num);

  std::string_view denPart = text.substr(slash + 1);
  if (!is_integer_token(denPart, false)) {
    throw ValidationError("denominator must be a positive integer in '" +
                          std::string(text) + "'");
  }
  const BigInt den{std::string(denPart)};
  if (den == 0) {
    throw ValidationError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += '/';
    out += denominator(value).str();
  }
  return out;
}

}  // namespace belgames
