#include "censor/measure.hpp"

#include "censor/errors.hpp"

#include <cmath>

namespace censor {

template <class T>
Measure<T>::Measure(SpacePtr space, std::vector<T> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw InvalidArgument("measure needs a state space");
  if (weights_.size() != space_->size()) {
    throw InvalidArgument("measure has " + std::to_string(weights_.size()) + " weights for a space of " +
                          std::to_string(space_->size()) + " states");
  }
  T total = 0;
  for (const T& w : weights_) {
    if (w < 0) throw InvalidArgument("measure has a negative weight");
    total += w;
  }
  if (!ScalarTraits<T>::sums_to_one(total)) {
    throw InvalidArgument("measure weights sum to " + ScalarTraits<T>::to_string(total) + ", not 1");
  }
}

template <class T>
std::size_t Measure<T>::support_size() const {
  std::size_t n = 0;
  for (const T& w : weights_) n += ScalarTraits<T>::is_zero(w) ? 0 : 1;
  return n;
}

template <class T>
void require_same_space(const Measure<T>& a, const Measure<T>& b) {
  if (!Measure<T>::same_space(a.space(), b.space())) {
    throw InvalidArgument("measures live on different spaces: " + a.space().spec() + " vs " +
                          b.space().spec());
  }
}

template <class T>
Measure<T> point_measure(const SpacePtr& space, StateId id) {
  if (id >= space->size()) throw InvalidArgument("state id out of range");
  std::vector<T> w(space->size(), T(0));
  w[id] = 1;
  return Measure<T>::unchecked(space, std::move(w));
}

template <class T>
Measure<T> point_measure(const SpacePtr& space, std::span<const int> state) {
  return point_measure<T>(space, space->index_of(state));
}

template <class T>
Measure<T> uniform_measure(const SpacePtr& space) {
  return conditional_uniform<T>(space, [](std::span<const int>) { return true; });
}

template <class T>
Measure<T> conditional_uniform(const SpacePtr& space, const StatePredicate& predicate) {
  std::vector<char> hit(space->size(), 0);
  long count = 0;
  for (StateId s = 0; s < space->size(); ++s) {
    if (predicate(space->state(s))) {
      hit[s] = 1;
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("no state of " + space->spec() + " satisfies the condition");
  const T p = ScalarTraits<T>::ratio(1, count);
  std::vector<T> w(space->size(), T(0));
  for (StateId s = 0; s < space->size(); ++s) {
    if (hit[s]) w[s] = p;
  }
  return Measure<T>::unchecked(space, std::move(w));
}

int monochromatic_edges(const Graph& g, std::span<const int> assignment) {
  int h = 0;
  for (const Edge& e : g.edges()) {
    h += assignment[static_cast<std::size_t>(e.u)] == assignment[static_cast<std::size_t>(e.v)];
  }
  return h;
}

template <class T>
Measure<T> gibbs_measure(const SpacePtr& space, Coupling coupling, const PottsStrength& strength) {
  if (!space->is_potts()) throw InvalidArgument("Gibbs measure needs a Potts space, got " + space->spec());
  std::vector<int> energy(space->size());
  for (StateId s = 0; s < space->size(); ++s) {
    energy[s] = monochromatic_edges(*space->graph(), space->state(s));
  }
  return Measure<T>::unchecked(space, heat_bath_weights<T>(energy, coupling, strength));
}

template <class T>
T tv_distance(const Measure<T>& a, const Measure<T>& b) {
  require_same_space(a, b);
  T sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += ScalarTraits<T>::abs(a.weights()[i] - b.weights()[i]);
  }
  return sum / 2;
}

template <class T>
T l2_distance_squared(const Measure<T>& a, const Measure<T>& b) {
  require_same_space(a, b);
  T sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    T d = a.weights()[i] - b.weights()[i];
    sum += d * d;
  }
  return sum;
}

template <class T>
double l2_distance(const Measure<T>& a, const Measure<T>& b) {
  return std::sqrt(ScalarTraits<T>::to_double(l2_distance_squared(a, b)));
}

template <class T>
T event_probability(const Measure<T>& m, const StatePredicate& predicate) {
  T sum = 0;
  for (StateId s = 0; s < m.size(); ++s) {
    if (!ScalarTraits<T>::is_zero(m.weights()[s]) && predicate(m.space().state(s))) {
      sum += m.weights()[s];
    }
  }
  return sum;
}

#define CENSOR_INSTANTIATE_MEASURE(T)                                                          \
  template class Measure<T>;                                                                   \
  template void require_same_space<T>(const Measure<T>&, const Measure<T>&);                   \
  template Measure<T> point_measure<T>(const SpacePtr&, StateId);                              \
  template Measure<T> point_measure<T>(const SpacePtr&, std::span<const int>);                 \
  template Measure<T> uniform_measure<T>(const SpacePtr&);                                     \
  template Measure<T> conditional_uniform<T>(const SpacePtr&, const StatePredicate&);          \
  template Measure<T> gibbs_measure<T>(const SpacePtr&, Coupling, const PottsStrength&);       \
  template T tv_distance<T>(const Measure<T>&, const Measure<T>&);                             \
  template T l2_distance_squared<T>(const Measure<T>&, const Measure<T>&);                     \
  template double l2_distance<T>(const Measure<T>&, const Measure<T>&);                        \
  template T event_probability<T>(const Measure<T>&, const StatePredicate&);

CENSOR_INSTANTIATE_MEASURE(Rational)
CENSOR_INSTANTIATE_MEASURE(double)

#undef CENSOR_INSTANTIATE_MEASURE

}  // namespace censor
