#pragma once

#include "censor/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace censor {

using StateId = std::uint32_t;

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

struct Colorings {
  Graph graph;
  int q;
};

struct Permutations {
  int n;
};

struct Potts {
  Graph graph;
  int q;
};

using ConfigKind = std::variant<Colorings, Permutations, Potts>;

/// An enumerated, indexed finite configuration space.
///
/// States are stored with 0-based values: a color/spin per vertex, or for
/// permutations the particle held at each location. Enumeration is
/// lexicographic, so a StateId is the rank of its assignment vector. The
/// object is immutable after construction.
class StateSpace {
 public:
  // Throws CapExceeded when the space would hold more than `cap` states.
  static std::shared_ptr<const StateSpace> enumerate(ConfigKind kind,
                                                     std::size_t cap = kDefaultStateCap);

  const ConfigKind& kind() const noexcept { return kind_; }
  bool is_colorings() const noexcept { return std::holds_alternative<Colorings>(kind_); }
  bool is_permutations() const noexcept { return std::holds_alternative<Permutations>(kind_); }
  bool is_potts() const noexcept { return std::holds_alternative<Potts>(kind_); }
  // Graph of a coloring or Potts space; nullptr for permutations.
  const Graph* graph() const noexcept;

  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  // Number of sites (vertices or locations).
  int width() const noexcept { return width_; }
  // Number of values a site can take (q, or n for permutations).
  int alphabet() const noexcept { return alphabet_; }

  std::span<const int> state(StateId id) const;
  std::optional<StateId> find(std::span<const int> assignment) const;
  // Like find, but throws InvalidArgument for assignments outside the space.
  StateId index_of(std::span<const int> assignment) const;

  // "perm:4", "color:triangle:q=4", "potts:<graph>:q=4".
  std::string spec() const;

 private:
  StateSpace(ConfigKind kind, int width, int alphabet);

  ConfigKind kind_;
  int width_;
  int alphabet_;
  std::size_t count_ = 0;
  std::vector<int> data_;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

// Inverse of StateSpace::spec. Graph names go through load_graph.
SpacePtr parse_space_spec(std::string_view spec, std::size_t cap = kDefaultStateCap);

// Shift 1-based labels to the internal 0-based representation and back.
std::vector<int> to_internal(std::span<const int> one_based);
std::vector<int> to_external(std::span<const int> zero_based);

bool is_proper_coloring(const Graph& g, std::span<const int> colors);

/// The identification of 4-colorings of the triangle with permutations of
/// four symbols: vertex 4 carries the color missing from vertices 1..3.
struct TriangleBijection {
  SpacePtr colorings;
  SpacePtr permutations;
  std::vector<StateId> forward;  // coloring id -> permutation id
  std::vector<StateId> inverse;  // permutation id -> coloring id
};

TriangleBijection triangle_bijection();

}  // namespace censor
