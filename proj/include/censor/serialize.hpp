#pragma once

#include "censor/experiment.hpp"
#include "censor/limit.hpp"
#include "censor/search.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace censor {

using Json = nlohmann::ordered_json;

// "num/den" string in exact mode, a JSON number in float mode.
template <class T>
Json scalar_json(const T& x);

// {"space", "mode", "weights": [{"state": [...1-based], "p": ...}]} with
// zero weights omitted.
template <class T>
Json measure_json(const Measure<T>& m);

using AnyMeasure = std::variant<Measure<Rational>, Measure<double>>;

// Inverse of measure_json. Throws InvalidArgument on malformed input.
AnyMeasure measure_from_json(const Json& j, std::size_t cap = kDefaultStateCap);

template <class T>
Json kernel_json(const Kernel<T>& k);

template <class T>
Json distance_json(const Distance<T>& d);

template <class T>
Json limit_json(const LimitResult<T>& r, const std::string& block);

template <class T>
Json violation_json(const Violation<T>& v);

// Two-space indentation plus a trailing newline; stable across runs.
std::string dump(const Json& j);

}  // namespace censor
