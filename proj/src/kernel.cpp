#include "censor/kernel.hpp"

#include "censor/errors.hpp"

#include <algorithm>

namespace censor {

template <class T>
Kernel<T>::Kernel(SpacePtr space, std::vector<std::vector<Entry>> rows, std::string label)
    : space_(std::move(space)), label_(std::move(label)) {
  if (rows.size() != space_->size()) throw InvalidArgument("kernel " + label_ + " has the wrong number of rows");
  offsets_.reserve(rows.size() + 1);
  offsets_.push_back(0);
  for (std::size_t from = 0; from < rows.size(); ++from) {
    auto& row = rows[from];
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.to < b.to; });
    T total = 0;
    std::size_t first = entries_.size();
    for (Entry& e : row) {
      if (e.to >= space_->size()) throw InvalidArgument("kernel " + label_ + " leaves the state space");
      if (e.p < 0) throw InvalidArgument("kernel " + label_ + " has a negative entry");
      total += e.p;
      if (ScalarTraits<T>::is_zero(e.p)) continue;
      if (entries_.size() > first && entries_.back().to == e.to) {
        entries_.back().p += e.p;
      } else {
        entries_.push_back(std::move(e));
      }
    }
    if (entries_.size() == first) {
      throw InvalidArgument("kernel " + label_ + " has an empty row at state " + std::to_string(from));
    }
    if (!ScalarTraits<T>::sums_to_one(total)) {
      throw InvalidArgument("kernel " + label_ + " row " + std::to_string(from) + " sums to " +
                            ScalarTraits<T>::to_string(total));
    }
    offsets_.push_back(entries_.size());
  }
}

template <class T>
T Kernel<T>::at(StateId from, StateId to) const {
  auto r = row(from);
  auto it = std::lower_bound(r.begin(), r.end(), to, [](const Entry& e, StateId s) { return e.to < s; });
  if (it != r.end() && it->to == to) return it->p;
  return T(0);
}

template <class T>
Kernel<T> recolor_kernel(const SpacePtr& space, int vertex) {
  validate_op(Recolor{vertex}, *space);
  const auto& kind = std::get<Colorings>(space->kind());
  const auto& neighbors = kind.graph.neighbors(vertex);
  std::vector<std::vector<typename Kernel<T>::Entry>> rows(space->size());
  std::vector<int> next;
  for (StateId s = 0; s < space->size(); ++s) {
    auto c = space->state(s);
    std::vector<StateId> targets;
    for (int color = 0; color < kind.q; ++color) {
      bool absent = std::none_of(neighbors.begin(), neighbors.end(),
                                 [&](int u) { return c[static_cast<std::size_t>(u)] == color; });
      if (!absent) continue;
      next.assign(c.begin(), c.end());
      next[static_cast<std::size_t>(vertex)] = color;
      targets.push_back(space->index_of(next));
    }
    if (targets.empty()) {
      throw InvalidArgument("no color is available at vertex " + std::to_string(vertex + 1));
    }
    const T p = ScalarTraits<T>::ratio(1, static_cast<long>(targets.size()));
    for (StateId t : targets) rows[s].push_back({t, p});
  }
  return Kernel<T>(space, std::move(rows), to_string(Op{Recolor{vertex}}));
}

template <class T>
Kernel<T> transpose_kernel(const SpacePtr& space, int i, int j) {
  validate_op(Transposition{i, j}, *space);
  std::vector<std::vector<typename Kernel<T>::Entry>> rows(space->size());
  const T half = ScalarTraits<T>::ratio(1, 2);
  std::vector<int> next;
  for (StateId s = 0; s < space->size(); ++s) {
    auto rho = space->state(s);
    next.assign(rho.begin(), rho.end());
    std::swap(next[static_cast<std::size_t>(i)], next[static_cast<std::size_t>(j)]);
    rows[s] = {{s, half}, {space->index_of(next), half}};
  }
  return Kernel<T>(space, std::move(rows), to_string(Op{Transposition{i, j}}));
}

template <class T>
Kernel<T> block_kernel(const SpacePtr& space, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  BlockShuffle op{positions};
  validate_op(op, *space);
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
    throw InvalidArgument("block lists a location twice");
  }
  long arrangements = 1;
  for (long k = 2; k <= static_cast<long>(positions.size()); ++k) arrangements *= k;
  const T p = ScalarTraits<T>::ratio(1, arrangements);

  std::vector<std::vector<typename Kernel<T>::Entry>> rows(space->size());
  std::vector<int> next;
  std::vector<int> values(positions.size());
  for (StateId s = 0; s < space->size(); ++s) {
    auto rho = space->state(s);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      values[k] = rho[static_cast<std::size_t>(positions[k])];
    }
    std::sort(values.begin(), values.end());
    next.assign(rho.begin(), rho.end());
    rows[s].reserve(static_cast<std::size_t>(arrangements));
    do {
      for (std::size_t k = 0; k < positions.size(); ++k) {
        next[static_cast<std::size_t>(positions[k])] = values[k];
      }
      rows[s].push_back({space->index_of(next), p});
    } while (std::next_permutation(values.begin(), values.end()));
  }
  return Kernel<T>(space, std::move(rows), to_string(Op{std::move(op)}));
}

template <class T>
Kernel<T> potts_kernel(const SpacePtr& space, int vertex, Coupling coupling, const PottsStrength& strength) {
  PottsUpdate op{vertex, coupling, strength};
  validate_op(op, *space);
  const auto& kind = std::get<Potts>(space->kind());
  const auto& neighbors = kind.graph.neighbors(vertex);
  std::vector<std::vector<typename Kernel<T>::Entry>> rows(space->size());
  std::vector<int> agreement(static_cast<std::size_t>(kind.q));
  std::vector<int> next;
  for (StateId s = 0; s < space->size(); ++s) {
    auto sigma = space->state(s);
    std::fill(agreement.begin(), agreement.end(), 0);
    for (int u : neighbors) ++agreement[static_cast<std::size_t>(sigma[static_cast<std::size_t>(u)])];
    auto probs = heat_bath_weights<T>(agreement, coupling, strength);
    next.assign(sigma.begin(), sigma.end());
    for (int spin = 0; spin < kind.q; ++spin) {
      next[static_cast<std::size_t>(vertex)] = spin;
      rows[s].push_back({space->index_of(next), std::move(probs[static_cast<std::size_t>(spin)])});
    }
  }
  return Kernel<T>(space, std::move(rows), to_string(Op{std::move(op)}));
}

template <class T>
Kernel<T> make_kernel(const SpacePtr& space, const Op& op) {
  validate_op(op, *space);
  return std::visit(
      [&](const auto& o) -> Kernel<T> {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Transposition>) {
          return transpose_kernel<T>(space, o.i, o.j);
        } else if constexpr (std::is_same_v<O, Recolor>) {
          return recolor_kernel<T>(space, o.v);
        } else if constexpr (std::is_same_v<O, BlockShuffle>) {
          return block_kernel<T>(space, o.positions);
        } else {
          return potts_kernel<T>(space, o.v, o.coupling, o.strength);
        }
      },
      op);
}

template <class T>
Kernel<T> compose(const Kernel<T>& a, const Kernel<T>& b) {
  if (!Measure<T>::same_space(a.space(), b.space())) {
    throw InvalidArgument("cannot compose kernels on different spaces");
  }
  using Entry = typename Kernel<T>::Entry;
  std::vector<std::vector<Entry>> rows(a.size());
  std::vector<T> acc(a.size(), T(0));
  std::vector<char> touched(a.size(), 0);
  std::vector<StateId> order;
  for (StateId x = 0; x < a.size(); ++x) {
    order.clear();
    for (const Entry& ay : a.row(x)) {
      for (const Entry& bz : b.row(ay.to)) {
        if (!touched[bz.to]) {
          touched[bz.to] = 1;
          order.push_back(bz.to);
        }
        acc[bz.to] += ay.p * bz.p;
      }
    }
    for (StateId z : order) {
      rows[x].push_back({z, std::move(acc[z])});
      acc[z] = 0;
      touched[z] = 0;
    }
  }
  return Kernel<T>(a.space_ptr(), std::move(rows), a.label() + " " + b.label());
}

template <class T>
Measure<T> apply(const Measure<T>& m, const Kernel<T>& k) {
  if (!Measure<T>::same_space(m.space(), k.space())) {
    throw InvalidArgument("kernel " + k.label() + " acts on " + k.space().spec() + ", measure lives on " +
                          m.space().spec());
  }
  std::vector<T> out(m.size(), T(0));
  for (StateId x = 0; x < m.size(); ++x) {
    const T& w = m.weights()[x];
    if (ScalarTraits<T>::is_zero(w)) continue;
    for (const auto& e : k.row(x)) out[e.to] += w * e.p;
  }
  return Measure<T>::unchecked(m.space_ptr(), std::move(out));
}

template <class T>
bool is_doubly_stochastic(const Kernel<T>& k) {
  std::vector<T> column(k.size(), T(0));
  for (StateId x = 0; x < k.size(); ++x) {
    for (const auto& e : k.row(x)) column[e.to] += e.p;
  }
  return std::all_of(column.begin(), column.end(), [](const T& c) { return ScalarTraits<T>::sums_to_one(c); });
}

template <class T>
const Kernel<T>& KernelCache<T>::get(const Op& op) {
  std::string key = to_string(op);
  auto it = kernels_.find(key);
  if (it == kernels_.end()) it = kernels_.emplace(std::move(key), make_kernel<T>(space_, op)).first;
  return it->second;
}

template <class T>
void KernelCache<T>::warm(std::span<const Op> ops) {
  for (const Op& op : ops) get(op);
}

template <class T>
const Kernel<T>* KernelCache<T>::find(const Op& op) const {
  auto it = kernels_.find(to_string(op));
  return it == kernels_.end() ? nullptr : &it->second;
}

template <class T>
Measure<T> apply_ops(const Measure<T>& m, std::span<const Op> ops, KernelCache<T>& cache) {
  Measure<T> current = m;
  for (const Op& op : ops) current = apply(current, cache.get(op));
  return current;
}

template <class T>
Measure<T> apply_schedule(const Measure<T>& m, const Schedule& schedule, KernelCache<T>& cache) {
  auto ops = schedule.flatten();
  return apply_ops(m, ops, cache);
}

template <class T>
Measure<T> apply_schedule(const Measure<T>& m, const Schedule& schedule) {
  KernelCache<T> cache(m.space_ptr());
  return apply_schedule(m, schedule, cache);
}

template <class T>
std::vector<Measure<T>> trajectory(const Measure<T>& m, std::span<const Op> ops, KernelCache<T>& cache) {
  std::vector<Measure<T>> out{m};
  out.reserve(ops.size() + 1);
  for (const Op& op : ops) out.push_back(apply(out.back(), cache.get(op)));
  return out;
}

template <class T>
Kernel<T> compose_ops(std::span<const Op> ops, KernelCache<T>& cache) {
  if (ops.empty()) throw InvalidArgument("cannot compose an empty op sequence");
  Kernel<T> q = cache.get(ops.front());
  for (std::size_t k = 1; k < ops.size(); ++k) q = compose(q, cache.get(ops[k]));
  return q;
}

#define CENSOR_INSTANTIATE_KERNEL(T)                                                                   \
  template class Kernel<T>;                                                                            \
  template class KernelCache<T>;                                                                       \
  template Kernel<T> recolor_kernel<T>(const SpacePtr&, int);                                          \
  template Kernel<T> transpose_kernel<T>(const SpacePtr&, int, int);                                   \
  template Kernel<T> block_kernel<T>(const SpacePtr&, std::vector<int>);                               \
  template Kernel<T> potts_kernel<T>(const SpacePtr&, int, Coupling, const PottsStrength&);            \
  template Kernel<T> make_kernel<T>(const SpacePtr&, const Op&);                                       \
  template Kernel<T> compose<T>(const Kernel<T>&, const Kernel<T>&);                                   \
  template Measure<T> apply<T>(const Measure<T>&, const Kernel<T>&);                                   \
  template bool is_doubly_stochastic<T>(const Kernel<T>&);                                             \
  template Measure<T> apply_ops<T>(const Measure<T>&, std::span<const Op>, KernelCache<T>&);           \
  template Measure<T> apply_schedule<T>(const Measure<T>&, const Schedule&, KernelCache<T>&);          \
  template Measure<T> apply_schedule<T>(const Measure<T>&, const Schedule&);                           \
  template std::vector<Measure<T>> trajectory<T>(const Measure<T>&, std::span<const Op>, KernelCache<T>&); \
  template Kernel<T> compose_ops<T>(std::span<const Op>, KernelCache<T>&);

CENSOR_INSTANTIATE_KERNEL(Rational)
CENSOR_INSTANTIATE_KERNEL(double)

#undef CENSOR_INSTANTIATE_KERNEL

}  // namespace censor
