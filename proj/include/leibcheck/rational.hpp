#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace leibcheck {

/// Exact arbitrary-precision rational; the base field of every computation.
/// Expression templates are off so values behave like plain numbers.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Parses "p", "-p/q" etc.  Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Prints as "p" or "p/q", always normalized.
std::string rational_str(const Rational& value);

} // namespace leibcheck
