#pragma once

#include "censor/potts.hpp"
#include "censor/scalar.hpp"
#include "censor/statespace.hpp"

#include <functional>
#include <span>
#include <vector>

namespace censor {

using StatePredicate = std::function<bool(std::span<const int>)>;

/// A probability vector over a StateSpace.
///
/// T is Rational (exact mode) or double (float mode). Weights are
/// nonnegative and sum to exactly one (exact) or within kFloatSumTolerance.
template <class T>
class Measure {
 public:
  using Scalar = T;

  // Validates nonnegativity and total mass; throws InvalidArgument.
  Measure(SpacePtr space, std::vector<T> weights);

  const StateSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::span<const T> weights() const noexcept { return weights_; }
  const T& operator[](StateId id) const { return weights_.at(id); }
  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t support_size() const;

  // Skips validation; for results of operations that preserve mass.
  static Measure unchecked(SpacePtr space, std::vector<T> weights) {
    return Measure(std::move(space), std::move(weights), Unchecked{});
  }

  friend bool operator==(const Measure& a, const Measure& b) {
    return same_space(*a.space_, *b.space_) && a.weights_ == b.weights_;
  }

  static bool same_space(const StateSpace& a, const StateSpace& b) {
    return &a == &b || (a.size() == b.size() && a.spec() == b.spec());
  }

 private:
  struct Unchecked {};
  Measure(SpacePtr space, std::vector<T> weights, Unchecked)
      : space_(std::move(space)), weights_(std::move(weights)) {}

  SpacePtr space_;
  std::vector<T> weights_;
};

// Throws InvalidArgument unless both measures live on the same space.
template <class T>
void require_same_space(const Measure<T>& a, const Measure<T>& b);

// Assignment is 0-based.
template <class T>
Measure<T> point_measure(const SpacePtr& space, std::span<const int> state);
template <class T>
Measure<T> point_measure(const SpacePtr& space, StateId id);

template <class T>
Measure<T> uniform_measure(const SpacePtr& space);

// Uniform on the states satisfying the predicate (0-based assignments).
template <class T>
Measure<T> conditional_uniform(const SpacePtr& space, const StatePredicate& predicate);

// Weight proportional to exp(s * J * H) with H the number of monochromatic
// edges, s = +1 ferro / -1 antiferro.
template <class T>
Measure<T> gibbs_measure(const SpacePtr& space, Coupling coupling, const PottsStrength& strength);

template <class T>
T tv_distance(const Measure<T>& a, const Measure<T>& b);

// Squared Euclidean distance, exact in exact mode.
template <class T>
T l2_distance_squared(const Measure<T>& a, const Measure<T>& b);

template <class T>
double l2_distance(const Measure<T>& a, const Measure<T>& b);

template <class T>
T event_probability(const Measure<T>& m, const StatePredicate& predicate);

// Number of monochromatic edges of a Potts/coloring assignment.
int monochromatic_edges(const Graph& g, std::span<const int> assignment);

}  // namespace censor
