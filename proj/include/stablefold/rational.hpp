#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace stablefold {

// Exact heights, times and diagram coordinates. Denominators stay small
// (event counts per sector), so 64-bit components never come close to
// overflowing for realistic braid words.
using Rational = boost::rational<std::int64_t>;

// Always "p/q" with q > 0, including integers ("3/1").
std::string to_string(const Rational& r);

// Inverse of to_string. Throws std::invalid_argument on malformed text or a
// non-positive denominator.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace stablefold
