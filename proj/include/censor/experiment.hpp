#pragma once

#include "censor/kernel.hpp"

#include <optional>
#include <string>

namespace censor {

enum class Metric { tv, l2 };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

/// Distance between two measures under a metric.
///
/// For L2 the stored value is the squared norm, so exact mode can compare
/// distances without irrational square roots.
template <class T>
struct Distance {
  Metric metric = Metric::tv;
  T value{};

  double to_double() const;
  // "num/den" (tv, exact), "sqrt(num/den)" (l2, exact) or a decimal.
  std::string to_string() const;
};

template <class T>
Distance<T> distance(Metric metric, const Measure<T>& a, const Measure<T>& b);

// a < b: rational comparison in exact mode, a + kFloatMargin < b in float.
template <class T>
bool strictly_closer(const Distance<T>& a, const Distance<T>& b);

// Uniform measure for coloring and permutation dynamics; for Potts the
// Gibbs measure of the coupling shared by every Potts op in `ops`.
template <class T>
Measure<T> stationary_target(const SpacePtr& space, std::span<const Op> ops);

template <class T>
struct InsertionExperiment {
  Measure<T> initial;
  Schedule base;
  // Number of flattened base ops applied before `extra`.
  std::size_t insert_at = 0;
  Op extra;
  Metric metric = Metric::tv;
  // Defaults to stationary_target over the base and extra ops.
  std::optional<Measure<T>> target;
};

template <class T>
struct ExperimentResult {
  Distance<T> d_mu;
  Distance<T> d_nu;
  // d(mu, target) < d(nu, target): the inserted update moved away.
  bool violation = false;
  Measure<T> mu;
  Measure<T> nu;
  Measure<T> target;
};

template <class T>
ExperimentResult<T> compare_insertion(const InsertionExperiment<T>& experiment, KernelCache<T>& cache);
template <class T>
ExperimentResult<T> compare_insertion(const InsertionExperiment<T>& experiment);

}  // namespace censor
