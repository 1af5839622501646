#ifndef BELGAMES_RATIONAL_HPP
#define BELGAMES_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace belgames {

using BigInt = boost::multiprecision::cpp_int;

// Every numeric quantity in the library. Arbitrary precision, always kept in
// canonical form (positive denominator, reduced), arithmetic is exact.
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/4", "-2", "10". No whitespace, no decimals, denominator must be
// a positive integer. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Canonical serialization: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace belgames

#endif
