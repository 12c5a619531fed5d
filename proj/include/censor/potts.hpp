#pragma once

#include "censor/scalar.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace censor {

enum class Coupling { ferro, antiferro };

/// Interaction strength of a Potts model.
///
/// Either a real coupling J (float mode only) or the rational edge factor
/// w = e^{-J}. The w form keeps exact arithmetic and admits w = 0, the
/// J = infinity limit.
class PottsStrength {
 public:
  static PottsStrength from_J(double j);
  static PottsStrength from_w(Rational w);

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& w() const { return std::get<Rational>(value_); }
  double j() const { return std::get<double>(value_); }
  // J as a double; +inf for w = 0.
  double as_J() const;

  // "J=3.5" or "w=1/100".
  std::string to_string() const;

  friend bool operator==(const PottsStrength&, const PottsStrength&) = default;

 private:
  explicit PottsStrength(std::variant<double, Rational> v) : value_(std::move(v)) {}
  std::variant<double, Rational> value_;
};

std::string_view to_string(Coupling c);

/// Normalized heat-bath weights over a list of alternatives.
///
/// Alternative k gets weight proportional to exp(s * J * agreement[k]) with
/// s = +1 (ferro) or -1 (antiferro). With the w form this is w^{a_k - min a}
/// for antiferro and w^{max a - a_k} for ferro, which stays finite at w = 0.
/// The float J form subtracts the maximal log-weight before exponentiating.
/// Throws InvalidArgument when T is exact and the strength is a real J.
template <class T>
std::vector<T> heat_bath_weights(std::span<const int> agreement, Coupling coupling,
                                 const PottsStrength& strength);

}  // namespace censor
