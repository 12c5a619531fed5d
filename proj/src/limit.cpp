#include "censor/limit.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <numeric>

namespace censor {

namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

// Tarjan's algorithm restricted to `nodes`, iterative to avoid deep recursion
// on large spaces. Returns the component id of every node (kUnvisited
// outside `nodes`) and the number of components.
template <class T>
std::pair<std::vector<std::size_t>, std::size_t> strongly_connected(const Kernel<T>& q,
                                                                    const std::vector<StateId>& nodes) {
  const std::size_t n = q.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<StateId> stack;
  std::size_t counter = 0;
  std::size_t components = 0;

  struct Frame {
    StateId v;
    std::size_t edge;
  };
  for (StateId root : nodes) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto row = q.row(f.v);
      if (f.edge < row.size()) {
        StateId w = row[f.edge++].to;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      StateId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }
  return {std::move(comp), components};
}

// Period of the class containing `members` (all in component `id`): gcd of
// level[u] + 1 - level[w] over internal edges u -> w of a BFS from one root.
template <class T>
std::size_t class_period(const Kernel<T>& q, const std::vector<StateId>& members,
                         const std::vector<std::size_t>& comp, std::size_t id) {
  std::vector<long> level(q.size(), -1);
  std::vector<StateId> queue{members.front()};
  level[members.front()] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    StateId u = queue[head];
    for (const auto& e : q.row(u)) {
      if (comp[e.to] == id && level[e.to] < 0) {
        level[e.to] = level[u] + 1;
        queue.push_back(e.to);
      }
    }
  }
  long g = 0;
  for (StateId u : members) {
    for (const auto& e : q.row(u)) {
      if (comp[e.to] != id) continue;
      g = std::gcd(g, std::labs(level[u] + 1 - level[e.to]));
    }
  }
  return static_cast<std::size_t>(g);
}

}  // namespace

template <class T>
std::optional<Measure<T>> certify_uniform_limit(const Measure<T>& m, const Kernel<T>& q,
                                                std::size_t* closed_classes) {
  if (!Measure<T>::same_space(m.space(), q.space())) {
    throw InvalidArgument("block kernel and measure live on different spaces");
  }
  const std::size_t n = q.size();
  std::vector<char> reached(n, 0);
  std::vector<StateId> nodes;
  for (StateId s = 0; s < n; ++s) {
    if (!ScalarTraits<T>::is_zero(m.weights()[s])) {
      reached[s] = 1;
      nodes.push_back(s);
    }
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (const auto& e : q.row(nodes[head])) {
      if (!reached[e.to]) {
        reached[e.to] = 1;
        nodes.push_back(e.to);
      }
    }
  }

  auto [comp, count] = strongly_connected(q, nodes);
  std::vector<std::vector<StateId>> members(count);
  for (StateId s : nodes) members[comp[s]].push_back(s);

  std::vector<T> limit(n, T(0));
  std::vector<T> incoming(n, T(0));
  for (std::size_t c = 0; c < count; ++c) {
    // Closed: no edge leaves the component.
    for (StateId u : members[c]) {
      for (const auto& e : q.row(u)) {
        if (comp[e.to] != c) return std::nullopt;
      }
    }
    // Doubly stochastic on the class: incoming mass from inside is one.
    for (StateId u : members[c]) {
      for (const auto& e : q.row(u)) incoming[e.to] += e.p;
    }
    for (StateId w : members[c]) {
      if (!ScalarTraits<T>::sums_to_one(incoming[w])) return std::nullopt;
      incoming[w] = 0;
    }
    if (class_period(q, members[c], comp, c) != 1) return std::nullopt;

    T mass = 0;
    for (StateId u : members[c]) mass += m.weights()[u];
    const T share = mass / T(static_cast<long>(members[c].size()));
    for (StateId u : members[c]) limit[u] = share;
  }
  if (closed_classes) *closed_classes = count;

  auto candidate = Measure<T>::unchecked(m.space_ptr(), std::move(limit));
  auto image = apply(candidate, q);
  if constexpr (ScalarTraits<T>::exact) {
    if (!(image == candidate)) return std::nullopt;
  } else {
    if (tv_distance(image, candidate) > kFloatSumTolerance) return std::nullopt;
  }
  return candidate;
}

template <class T>
LimitResult<T> block_limit(const Measure<T>& m, const Schedule& block, KernelCache<T>& cache,
                           const LimitOptions& options) {
  auto ops = block.flatten();
  if (ops.empty()) throw InvalidArgument("block schedule is empty");
  const Kernel<T> q = compose_ops<T>(ops, cache);

  std::size_t classes = 0;
  auto certificate = certify_uniform_limit(m, q, &classes);

  if constexpr (ScalarTraits<T>::exact) {
    if (certificate) {
      T residual = tv_distance(apply(*certificate, q), *certificate);
      return LimitResult<T>{*certificate, true, true, 0, residual, classes};
    }
  }

  Measure<T> current = m;
  T residual = 0;
  std::size_t k = 0;
  bool converged = false;
  while (k < options.max_iterations) {
    Measure<T> next = apply(current, q);
    residual = tv_distance(next, current);
    current = std::move(next);
    ++k;
    if (ScalarTraits<T>::to_double(residual) < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (certificate) {
    return LimitResult<T>{*certificate, true, converged, k, residual, classes};
  }
  return LimitResult<T>{std::move(current), false, converged, k, residual, 0};
}

template std::optional<Measure<Rational>> certify_uniform_limit<Rational>(const Measure<Rational>&,
                                                                          const Kernel<Rational>&,
                                                                          std::size_t*);
template std::optional<Measure<double>> certify_uniform_limit<double>(const Measure<double>&,
                                                                      const Kernel<double>&, std::size_t*);
template LimitResult<Rational> block_limit<Rational>(const Measure<Rational>&, const Schedule&,
                                                     KernelCache<Rational>&, const LimitOptions&);
template LimitResult<double> block_limit<double>(const Measure<double>&, const Schedule&,
                                                 KernelCache<double>&, const LimitOptions&);

}  // namespace censor
