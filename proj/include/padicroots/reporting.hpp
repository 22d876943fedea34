#ifndef PADICROOTS_REPORTING_HPP
#define PADICROOTS_REPORTING_HPP

#include <string>

#include "padicroots/intpoly.hpp"

namespace padicroots {

inline constexpr const char* kVersion = "0.1.0";

// Fixed decimal rendering so identical numbers always print identically.
std::string format_double(double x);

// Exact rationals are serialized as "a/b" (or "a" when integral), never as
// floating point.
std::string format_rational(const Rational& q);

// RFC-style quoting for fields containing commas or quotes.
std::string csv_field(const std::string& s);

} // namespace padicroots

#endif
