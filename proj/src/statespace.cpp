#include "censor/statespace.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace censor {

namespace {

std::string too_large(std::size_t cap) {
  return "state space exceeds the cap of " + std::to_string(cap) + " states";
}

// q^width, or nullopt if it exceeds cap.
std::optional<std::size_t> bounded_power(int base, int exponent, std::size_t cap) {
  std::size_t p = 1;
  for (int k = 0; k < exponent; ++k) {
    p *= static_cast<std::size_t>(base);
    if (p > cap) return std::nullopt;
  }
  return p;
}

std::optional<std::size_t> bounded_factorial(int n, std::size_t cap) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) {
    f *= static_cast<std::size_t>(k);
    if (f > cap) return std::nullopt;
  }
  return f;
}

}  // namespace

StateSpace::StateSpace(ConfigKind kind, int width, int alphabet)
    : kind_(std::move(kind)), width_(width), alphabet_(alphabet) {}

const Graph* StateSpace::graph() const noexcept {
  if (const auto* c = std::get_if<Colorings>(&kind_)) return &c->graph;
  if (const auto* p = std::get_if<Potts>(&kind_)) return &p->graph;
  return nullptr;
}

SpacePtr StateSpace::enumerate(ConfigKind kind, std::size_t cap) {
  int width = 0;
  int alphabet = 0;
  if (const auto* p = std::get_if<Permutations>(&kind)) {
    if (p->n < 1) throw InvalidArgument("permutation size must be positive");
    width = alphabet = p->n;
  } else if (const auto* c = std::get_if<Colorings>(&kind)) {
    if (c->q < 1) throw InvalidArgument("number of colors must be positive");
    width = c->graph.vertex_count();
    alphabet = c->q;
  } else {
    const auto& s = std::get<Potts>(kind);
    if (s.q < 1) throw InvalidArgument("number of spins must be positive");
    width = s.graph.vertex_count();
    alphabet = s.q;
  }

  std::shared_ptr<StateSpace> space(new StateSpace(std::move(kind), width, alphabet));
  auto& data = space->data_;
  std::vector<int> current(static_cast<std::size_t>(width), 0);

  if (space->is_permutations()) {
    auto count = bounded_factorial(width, cap);
    if (!count) throw CapExceeded(too_large(cap));
    data.reserve(*count * static_cast<std::size_t>(width));
    std::iota(current.begin(), current.end(), 0);
    do {
      data.insert(data.end(), current.begin(), current.end());
    } while (std::next_permutation(current.begin(), current.end()));
  } else if (space->is_potts()) {
    auto count = bounded_power(alphabet, width, cap);
    if (!count) throw CapExceeded(too_large(cap));
    data.reserve(*count * static_cast<std::size_t>(width));
    // Odometer with the last site varying fastest gives lexicographic order.
    while (true) {
      data.insert(data.end(), current.begin(), current.end());
      int k = width - 1;
      while (k >= 0 && current[static_cast<std::size_t>(k)] == alphabet - 1) {
        current[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
      ++current[static_cast<std::size_t>(k)];
    }
  } else {
    // Backtracking in vertex order, colors ascending: lexicographic output.
    const Graph& g = *space->graph();
    std::size_t count = 0;
    auto fits = [&](int v, int color) {
      for (int u : g.neighbors(v)) {
        if (u < v && current[static_cast<std::size_t>(u)] == color) return false;
      }
      return true;
    };
    auto extend = [&](auto&& self, int v) -> void {
      if (v == width) {
        if (++count > cap) throw CapExceeded(too_large(cap));
        data.insert(data.end(), current.begin(), current.end());
        return;
      }
      for (int color = 0; color < alphabet; ++color) {
        if (!fits(v, color)) continue;
        current[static_cast<std::size_t>(v)] = color;
        self(self, v + 1);
      }
    };
    extend(extend, 0);
  }
  space->count_ = width == 0 ? 0 : data.size() / static_cast<std::size_t>(width);
  return space;
}

std::span<const int> StateSpace::state(StateId id) const {
  if (id >= count_) throw InvalidArgument("state id " + std::to_string(id) + " out of range");
  return {data_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(width_),
          static_cast<std::size_t>(width_)};
}

std::optional<StateId> StateSpace::find(std::span<const int> assignment) const {
  if (assignment.size() != static_cast<std::size_t>(width_)) return std::nullopt;
  const auto w = static_cast<std::size_t>(width_);
  std::size_t lo = 0;
  std::size_t hi = count_;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    const int* row = data_.data() + mid * w;
    if (std::lexicographical_compare(row, row + w, assignment.begin(), assignment.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == count_) return std::nullopt;
  const int* row = data_.data() + lo * w;
  if (!std::equal(row, row + w, assignment.begin())) return std::nullopt;
  return static_cast<StateId>(lo);
}

StateId StateSpace::index_of(std::span<const int> assignment) const {
  if (auto id = find(assignment)) return *id;
  std::string text;
  for (int x : assignment) text += (text.empty() ? "" : ",") + std::to_string(x + 1);
  throw InvalidArgument("state (" + text + ") is not in space " + spec());
}

std::string StateSpace::spec() const {
  if (const auto* p = std::get_if<Permutations>(&kind_)) return "perm:" + std::to_string(p->n);
  if (const auto* c = std::get_if<Colorings>(&kind_)) {
    return "color:" + c->graph.source() + ":q=" + std::to_string(c->q);
  }
  const auto& s = std::get<Potts>(kind_);
  return "potts:" + s.graph.source() + ":q=" + std::to_string(s.q);
}

namespace {

int parse_positive(std::string_view text, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw InvalidArgument("malformed space spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

SpacePtr parse_space_spec(std::string_view spec, std::size_t cap) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("malformed space spec '" + std::string(spec) + "'");
  }
  std::string_view family = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (family == "perm") return StateSpace::enumerate(Permutations{parse_positive(rest, spec)}, cap);
  if (family != "color" && family != "potts") {
    throw InvalidArgument("unknown space family '" + std::string(family) + "'");
  }
  // The graph part may itself contain ':' (paths); q is after the last one.
  auto last = rest.rfind(":q=");
  if (last == std::string_view::npos) {
    throw InvalidArgument("space spec '" + std::string(spec) + "' is missing ':q=<n>'");
  }
  Graph g = load_graph(rest.substr(0, last));
  int q = parse_positive(rest.substr(last + 3), spec);
  if (family == "color") return StateSpace::enumerate(Colorings{std::move(g), q}, cap);
  return StateSpace::enumerate(Potts{std::move(g), q}, cap);
}

std::vector<int> to_internal(std::span<const int> one_based) {
  std::vector<int> out(one_based.begin(), one_based.end());
  for (int& x : out) --x;
  return out;
}

std::vector<int> to_external(std::span<const int> zero_based) {
  std::vector<int> out(zero_based.begin(), zero_based.end());
  for (int& x : out) ++x;
  return out;
}

bool is_proper_coloring(const Graph& g, std::span<const int> colors) {
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return colors[static_cast<std::size_t>(e.u)] != colors[static_cast<std::size_t>(e.v)];
  });
}

TriangleBijection triangle_bijection() {
  TriangleBijection b;
  b.colorings = StateSpace::enumerate(Colorings{triangle_graph(), 4});
  b.permutations = StateSpace::enumerate(Permutations{4});
  b.forward.resize(b.colorings->size());
  b.inverse.resize(b.permutations->size());
  for (StateId c = 0; c < b.colorings->size(); ++c) {
    auto colors = b.colorings->state(c);
    std::vector<int> perm(colors.begin(), colors.end());
    int missing = 0 + 1 + 2 + 3 - colors[0] - colors[1] - colors[2];
    perm.push_back(missing);
    StateId p = b.permutations->index_of(perm);
    b.forward[c] = p;
    b.inverse[p] = c;
  }
  return b;
}

}  // namespace censor
