#pragma once

#include "censor/measure.hpp"
#include "censor/schedule.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace censor {

/// A row-stochastic operator on a StateSpace, stored in CSR form.
///
/// Measures act on kernels from the left: (m K)(y) = sum_x m(x) K(x, y).
template <class T>
class Kernel {
 public:
  struct Entry {
    StateId to;
    T p;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  // Rows may list a target more than once; entries are merged and sorted.
  // Throws InvalidArgument if a row is empty, negative, leaves the space or
  // does not sum to one.
  Kernel(SpacePtr space, std::vector<std::vector<Entry>> rows, std::string label);

  const StateSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const Entry> row(StateId from) const {
    return {entries_.data() + offsets_[from], offsets_[from + 1] - offsets_[from]};
  }
  // K(from, to), zero when absent.
  T at(StateId from, StateId to) const;

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.offsets_ == b.offsets_ && a.entries_ == b.entries_;
  }

 private:
  SpacePtr space_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
  std::string label_;
};

template <class T>
Kernel<T> recolor_kernel(const SpacePtr& space, int vertex);
template <class T>
Kernel<T> transpose_kernel(const SpacePtr& space, int i, int j);
template <class T>
Kernel<T> block_kernel(const SpacePtr& space, std::vector<int> positions);
template <class T>
Kernel<T> potts_kernel(const SpacePtr& space, int vertex, Coupling coupling, const PottsStrength& strength);

// Dispatches on the op type after validate_op.
template <class T>
Kernel<T> make_kernel(const SpacePtr& space, const Op& op);

// Kernel of "first a, then b".
template <class T>
Kernel<T> compose(const Kernel<T>& a, const Kernel<T>& b);

template <class T>
Measure<T> apply(const Measure<T>& m, const Kernel<T>& k);

// Column sums equal one (exactly / within kFloatSumTolerance).
template <class T>
bool is_doubly_stochastic(const Kernel<T>& k);

/// Kernels built once per op and reused.
///
/// get() inserts on a miss and is not safe to call concurrently; build the
/// ops a worker pool needs up front with warm() and share the cache
/// read-only afterwards through find().
template <class T>
class KernelCache {
 public:
  explicit KernelCache(SpacePtr space) : space_(std::move(space)) {}

  const Kernel<T>& get(const Op& op);
  void warm(std::span<const Op> ops);
  // nullptr if absent.
  const Kernel<T>* find(const Op& op) const;
  const SpacePtr& space_ptr() const noexcept { return space_; }

 private:
  SpacePtr space_;
  std::map<std::string, Kernel<T>> kernels_;
};

template <class T>
Measure<T> apply_ops(const Measure<T>& m, std::span<const Op> ops, KernelCache<T>& cache);
template <class T>
Measure<T> apply_schedule(const Measure<T>& m, const Schedule& schedule, KernelCache<T>& cache);
template <class T>
Measure<T> apply_schedule(const Measure<T>& m, const Schedule& schedule);

// The measure before any op followed by the measure after each op.
template <class T>
std::vector<Measure<T>> trajectory(const Measure<T>& m, std::span<const Op> ops, KernelCache<T>& cache);

// Composed kernel of a nonempty op sequence.
template <class T>
Kernel<T> compose_ops(std::span<const Op> ops, KernelCache<T>& cache);

}  // namespace censor
