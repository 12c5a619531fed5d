#include "censor/potts.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace censor {

PottsStrength PottsStrength::from_J(double j) {
  if (!std::isfinite(j)) throw InvalidArgument("coupling J must be finite");
  return PottsStrength(j);
}

PottsStrength PottsStrength::from_w(Rational w) {
  if (w < 0) throw InvalidArgument("edge factor w = e^{-J} must be nonnegative");
  return PottsStrength(std::move(w));
}

double PottsStrength::as_J() const {
  if (!is_exact()) return j();
  if (w() == 0) return std::numeric_limits<double>::infinity();
  const double j = -std::log(w().convert_to<double>());
  return j == 0.0 ? 0.0 : j;
}

std::string PottsStrength::to_string() const {
  if (is_exact()) return "w=" + format_rational(w());
  return "J=" + format_double(j());
}

std::string_view to_string(Coupling c) {
  return c == Coupling::ferro ? "f" : "af";
}

namespace {

template <class T>
T power(const T& base, int exponent) {
  T result = 1;
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

template <class T>
std::vector<T> normalized(std::vector<T> w) {
  T total = 0;
  for (const T& x : w) total += x;
  for (T& x : w) x /= total;
  return w;
}

}  // namespace

template <class T>
std::vector<T> heat_bath_weights(std::span<const int> agreement, Coupling coupling,
                                 const PottsStrength& strength) {
  if (agreement.empty()) throw InvalidArgument("heat-bath update over an empty set");
  const int top = *std::max_element(agreement.begin(), agreement.end());
  const int bottom = *std::min_element(agreement.begin(), agreement.end());
  std::vector<T> w;
  w.reserve(agreement.size());

  if (strength.is_exact()) {
    T factor;
    if constexpr (ScalarTraits<T>::exact) {
      factor = strength.w();
    } else {
      factor = strength.w().template convert_to<double>();
    }
    for (int a : agreement) {
      w.push_back(power(factor, coupling == Coupling::antiferro ? a - bottom : top - a));
    }
    return normalized(std::move(w));
  }

  if constexpr (ScalarTraits<T>::exact) {
    throw InvalidArgument("exact mode needs the Potts strength as a rational w = e^{-J}, got " +
                          strength.to_string());
  } else {
    const double sign = coupling == Coupling::ferro ? 1.0 : -1.0;
    std::vector<double> logw;
    for (int a : agreement) logw.push_back(sign * strength.j() * a);
    const double hi = *std::max_element(logw.begin(), logw.end());
    for (double l : logw) w.push_back(std::exp(l - hi));
    return normalized(std::move(w));
  }
}

template std::vector<Rational> heat_bath_weights<Rational>(std::span<const int>, Coupling,
                                                           const PottsStrength&);
template std::vector<double> heat_bath_weights<double>(std::span<const int>, Coupling,
                                                       const PottsStrength&);

}  // namespace censor
