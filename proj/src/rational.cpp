#include "gdof/rational.hpp"

#include "gdof/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace gdof {

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("not a rational of the form p/q: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.find_first_of(".eE") != std::string_view::npos) {
    throw ParseError("decimal input '" + std::string(text) +
                     "' rejected; write exponents as exact fractions p/q");
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const auto num = parse_integer(text.substr(0, slash), text);
  const auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal(const Rational& r, int digits) {
  // Long division keeps the rendering exact up to the requested digit; the
  // last digit is rounded half away from zero.
  std::int64_t num = r.numerator();
  const std::int64_t den = r.denominator();
  const bool negative = num < 0;
  if (negative) num = -num;
  std::int64_t whole = num / den;
  std::int64_t rem = num % den;
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    frac.push_back(static_cast<char>('0' + rem / den));
    rem %= den;
  }
  if (2 * rem >= den) {
    int i = digits - 1;
    for (; i >= 0; --i) {
      if (frac[i] == '9') {
        frac[i] = '0';
      } else {
        ++frac[i];
        break;
      }
    }
    if (i < 0) ++whole;
  }
  std::ostringstream os;
  const bool is_zero = whole == 0 && frac.find_first_not_of('0') == std::string::npos;
  if (negative && !is_zero) os << '-';
  os << whole;
  if (digits > 0) os << '.' << frac;
  return os.str();
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace gdof
