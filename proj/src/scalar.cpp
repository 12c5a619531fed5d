#include "censor/scalar.hpp"

#include "censor/errors.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

namespace censor {

std::string format_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

std::string format_rational(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return format_fraction(r);
}

namespace {

using Integer = boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidArgument("malformed integer '" + std::string(s) + "'");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

Integer power_of_ten(long exponent) {
  Integer p = 1;
  for (long k = 0; k < exponent; ++k) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw InvalidArgument("malformed denominator in '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
      throw InvalidArgument("malformed exponent in '" + std::string(text) + "'");
    }
  }
  std::string digits;
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) throw InvalidArgument("malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Integer value(digits);
  if (negative) value = -value;
  if (exponent >= 0) return Rational(Integer(value * power_of_ten(exponent)));
  return Rational(value, power_of_ten(-exponent));
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string_view to_string(Mode mode) {
  return mode == Mode::exact ? "exact" : "float";
}

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float") return Mode::floating;
  throw InvalidArgument("unknown mode '" + std::string(text) + "' (expected exact|float)");
}

}  // namespace censor
