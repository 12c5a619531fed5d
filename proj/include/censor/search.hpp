#pragma once

#include "censor/experiment.hpp"

#include <functional>
#include <vector>

namespace censor {

struct SearchConfig {
  std::vector<Op> family;
  // Base schedules of every length 0..max_length are enumerated.
  std::size_t max_length = 6;
  Metric metric = Metric::tv;
  bool stop_at_first = false;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Refuse searches with more (base, position, extra) candidates.
  std::size_t max_candidates = 50'000'000;
};

template <class T>
struct Violation {
  // Rank of the candidate in enumeration order.
  std::size_t index = 0;
  std::vector<Op> base;
  std::size_t insert_at = 0;
  Op extra;
  Distance<T> d_mu;
  Distance<T> d_nu;
};

template <class T>
struct SearchSummary {
  std::vector<Violation<T>> violations;
  std::size_t schedules = 0;
  std::size_t comparisons = 0;
  bool stopped_early = false;
};

// Number of candidates for a family of size f and lengths 0..max_length;
// saturates at SIZE_MAX.
std::size_t count_candidates(std::size_t family_size, std::size_t max_length);

/// Exhaustive insertion search.
///
/// Candidates are ordered by base length, then base schedule
/// (lexicographic in family order), then insertion position, then extra op.
/// Work is spread over threads but results are merged in that order, so the
/// output does not depend on the thread count. `on_violation` is called in
/// order as chunks complete.
template <class T>
SearchSummary<T> search(const Measure<T>& initial, const Measure<T>& target, const SearchConfig& config,
                        const std::function<void(const Violation<T>&)>& on_violation = {});

}  // namespace censor
