#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace censor {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class Mode { exact, floating };

// Strict comparisons in float mode require this much separation.
inline constexpr double kFloatMargin = 1e-9;
// Allowed deviation of a float probability vector's total mass from one.
inline constexpr double kFloatSumTolerance = 1e-12;

// Always "num/den", including integers ("1/1").
std::string format_fraction(const Rational& r);
// "n" for integers, "n/d" otherwise. Used by the schedule printer.
std::string format_rational(const Rational& r);
// Accepts "n", "n/d", and decimal literals such as "0.125" or "-2.5e-3".
Rational parse_rational(std::string_view text);
// Shortest round-trip representation.
std::string format_double(double x);

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::exact;
  static constexpr bool exact = true;

  static Rational ratio(long num, long den) { return Rational(num, den); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool sums_to_one(const Rational& s) { return s == 1; }
  static std::string to_string(const Rational& x) { return format_fraction(x); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::floating;
  static constexpr bool exact = false;

  static double ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }
  static double abs(double x) { return x < 0 ? -x : x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool less(double a, double b) { return a + kFloatMargin < b; }
  static bool sums_to_one(double s) { return s - 1.0 <= kFloatSumTolerance && 1.0 - s <= kFloatSumTolerance; }
  static std::string to_string(double x) { return format_double(x); }
};

}  // namespace censor
