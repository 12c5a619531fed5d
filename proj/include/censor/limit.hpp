#pragma once

#include "censor/kernel.hpp"

#include <optional>

namespace censor {

struct LimitOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100'000;
};

template <class T>
struct LimitResult {
  Measure<T> limit;
  // The limit is exact: uniform on each closed class of the block kernel,
  // weighted by the starting mass of that class.
  bool certified = false;
  // Successive iterates came within the tolerance.
  bool converged = false;
  std::size_t iterations = 0;
  // TV between the last two iterates (between limit * Q and limit when
  // certified without iterating).
  T residual{};
  std::size_t closed_classes = 0;
};

/// Uniform-on-closed-classes certificate for lim m Q^k.
///
/// Succeeds when every state reachable from the support of m lies in a
/// closed communicating class of Q, and each such class is aperiodic with Q
/// doubly stochastic on it. The limit then puts mass m(C)/|C| on every
/// state of class C. The result is checked to be a fixed point of Q.
template <class T>
std::optional<Measure<T>> certify_uniform_limit(const Measure<T>& m, const Kernel<T>& q,
                                                std::size_t* closed_classes = nullptr);

/// Limit of m Q^k for the composed block kernel Q.
///
/// Exact mode returns the certificate without iterating when one exists and
/// otherwise iterates exactly. Float mode always iterates (to report the
/// residual) and replaces the iterate by the certified limit when available.
/// Hitting the iteration cap is reported through `converged`, not thrown.
template <class T>
LimitResult<T> block_limit(const Measure<T>& m, const Schedule& block, KernelCache<T>& cache,
                           const LimitOptions& options = {});

}  // namespace censor
