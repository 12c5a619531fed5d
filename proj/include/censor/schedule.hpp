#pragma once

#include "censor/potts.hpp"
#include "censor/statespace.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace censor {

// Positions and vertices inside ops are 0-based; the DSL is 1-based.

// Lazy transposition t(i,j): swap locations i and j with probability 1/2.
struct Transposition {
  int i;
  int j;
  friend bool operator==(const Transposition&, const Transposition&) = default;
};

// Recoloring k(v): heat-bath update of vertex v for uniform proper colorings.
struct Recolor {
  int v;
  friend bool operator==(const Recolor&, const Recolor&) = default;
};

// Block update b{...}: uniformly permute the entries at the given locations.
struct BlockShuffle {
  std::vector<int> positions;
  friend bool operator==(const BlockShuffle&, const BlockShuffle&) = default;
};

// Potts heat-bath site update p(v;J=..;af|f) or p(v;w=..;af|f).
struct PottsUpdate {
  int v;
  Coupling coupling;
  PottsStrength strength;
  friend bool operator==(const PottsUpdate&, const PottsUpdate&) = default;
};

using Op = std::variant<Transposition, Recolor, BlockShuffle, PottsUpdate>;

std::string to_string(const Op& op);

struct Term;

struct Repeat {
  std::vector<Term> body;
  int count = 1;
  friend bool operator==(const Repeat&, const Repeat&) = default;
};

struct Term {
  std::variant<Op, Repeat> node;
  friend bool operator==(const Term&, const Term&) = default;
};

/// A deterministic update sequence with repetition groups.
///
/// Grammar (terms separated by whitespace):
///   schedule := term*
///   term     := op | "[" schedule "]" "^" INT
///   op       := "t(" i "," j ")" | "k(" v ")" | "b{" v ("," v)* "}"
///             | "p(" v ";" ("J=" FLOAT | "w=" RATIONAL) ";" ("af" | "f") ")"
struct Schedule {
  std::vector<Term> terms;

  static Schedule from_ops(std::vector<Op> ops);

  bool empty() const noexcept { return terms.empty(); }
  // Left-to-right sequence with every Repeat expanded.
  std::vector<Op> flatten() const;
  std::size_t flat_length() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Canonical printed form: single spaces, no redundant brackets.
std::string to_string(const Schedule& schedule);

// Throws ParseError carrying the offending position.
Schedule parse_schedule(std::string_view text);
Op parse_op(std::string_view text);

// Inserts `extra` after the first `position` ops of the flattened sequence.
std::vector<Op> with_insertion(std::span<const Op> ops, std::size_t position, const Op& extra);

/// Expands an op family such as "t(*,4)", "t(*,*)", "k(*)" or
/// "p(*;J=2;f)". Each '*' ranges over the space's sites; expansions that are
/// invalid (t(4,4)) or duplicates (t(2,1) after t(1,2)) are dropped. Plain
/// ops may be listed alongside wildcard terms.
std::vector<Op> parse_family(std::string_view text, const StateSpace& space);

// Throws InvalidArgument if `op` cannot act on `space`.
void validate_op(const Op& op, const StateSpace& space);

}  // namespace censor
