#include "stablefold/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace stablefold {

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "', expected p/q");
  }
  const std::int64_t p = parse_integer(text.substr(0, slash), text);
  const std::int64_t q = parse_integer(text.substr(slash + 1), text);
  if (q <= 0) {
    throw std::invalid_argument("rational '" + std::string(text) + "' needs a positive denominator");
  }
  return Rational(p, q);
}

}  // namespace stablefold
