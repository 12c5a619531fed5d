#include "censor/experiment.hpp"

#include "censor/errors.hpp"

#include <cmath>

namespace censor {

std::string_view to_string(Metric metric) { return metric == Metric::tv ? "tv" : "l2"; }

Metric parse_metric(std::string_view text) {
  if (text == "tv") return Metric::tv;
  if (text == "l2") return Metric::l2;
  throw InvalidArgument("unknown metric '" + std::string(text) + "' (expected tv|l2)");
}

template <class T>
double Distance<T>::to_double() const {
  double v = ScalarTraits<T>::to_double(value);
  return metric == Metric::tv ? v : std::sqrt(v);
}

template <class T>
std::string Distance<T>::to_string() const {
  if constexpr (ScalarTraits<T>::exact) {
    if (metric == Metric::tv) return format_fraction(value);
    return "sqrt(" + format_fraction(value) + ")";
  } else {
    return format_double(to_double());
  }
}

template <class T>
Distance<T> distance(Metric metric, const Measure<T>& a, const Measure<T>& b) {
  if (metric == Metric::tv) return {metric, tv_distance(a, b)};
  return {metric, l2_distance_squared(a, b)};
}

template <class T>
bool strictly_closer(const Distance<T>& a, const Distance<T>& b) {
  if (a.metric != b.metric) throw InvalidArgument("comparing distances under different metrics");
  if constexpr (ScalarTraits<T>::exact) {
    return a.value < b.value;
  } else {
    return ScalarTraits<T>::less(a.to_double(), b.to_double());
  }
}

template <class T>
Measure<T> stationary_target(const SpacePtr& space, std::span<const Op> ops) {
  if (!space->is_potts()) return uniform_measure<T>(space);
  const PottsUpdate* first = nullptr;
  for (const Op& op : ops) {
    const auto* p = std::get_if<PottsUpdate>(&op);
    if (!p) continue;
    if (!first) {
      first = p;
    } else if (p->coupling != first->coupling || !(p->strength == first->strength)) {
      throw InvalidArgument("Potts ops with different couplings have no common stationary target");
    }
  }
  if (!first) throw InvalidArgument("cannot infer the Gibbs target without a Potts op");
  return gibbs_measure<T>(space, first->coupling, first->strength);
}

template <class T>
ExperimentResult<T> compare_insertion(const InsertionExperiment<T>& experiment, KernelCache<T>& cache) {
  const auto ops = experiment.base.flatten();
  const auto inserted = with_insertion(ops, experiment.insert_at, experiment.extra);
  Measure<T> target = experiment.target ? *experiment.target
                                        : stationary_target<T>(experiment.initial.space_ptr(), inserted);
  require_same_space(experiment.initial, target);

  Measure<T> mu = apply_ops(experiment.initial, ops, cache);
  Measure<T> nu = apply_ops(experiment.initial, inserted, cache);
  auto d_mu = distance(experiment.metric, mu, target);
  auto d_nu = distance(experiment.metric, nu, target);
  bool violation = strictly_closer(d_mu, d_nu);
  return {std::move(d_mu), std::move(d_nu), violation, std::move(mu), std::move(nu), std::move(target)};
}

template <class T>
ExperimentResult<T> compare_insertion(const InsertionExperiment<T>& experiment) {
  KernelCache<T> cache(experiment.initial.space_ptr());
  return compare_insertion(experiment, cache);
}

#define CENSOR_INSTANTIATE_EXPERIMENT(T)                                                        \
  template struct Distance<T>;                                                                  \
  template Distance<T> distance<T>(Metric, const Measure<T>&, const Measure<T>&);               \
  template bool strictly_closer<T>(const Distance<T>&, const Distance<T>&);                     \
  template Measure<T> stationary_target<T>(const SpacePtr&, std::span<const Op>);               \
  template ExperimentResult<T> compare_insertion<T>(const InsertionExperiment<T>&, KernelCache<T>&); \
  template ExperimentResult<T> compare_insertion<T>(const InsertionExperiment<T>&);

CENSOR_INSTANTIATE_EXPERIMENT(Rational)
CENSOR_INSTANTIATE_EXPERIMENT(double)

#undef CENSOR_INSTANTIATE_EXPERIMENT

}  // namespace censor
