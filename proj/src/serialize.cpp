#include "censor/serialize.hpp"

#include "censor/errors.hpp"

namespace censor {

template <class T>
Json scalar_json(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    return format_fraction(x);
  } else {
    return x;
  }
}

template <class T>
Json measure_json(const Measure<T>& m) {
  Json weights = Json::array();
  for (StateId s = 0; s < m.size(); ++s) {
    if (ScalarTraits<T>::is_zero(m.weights()[s])) continue;
    weights.push_back(Json{{"state", to_external(m.space().state(s))}, {"p", scalar_json(m.weights()[s])}});
  }
  return Json{{"space", m.space().spec()}, {"mode", to_string(ScalarTraits<T>::mode)}, {"weights", weights}};
}

namespace {

template <class T>
Measure<T> weights_from_json(const SpacePtr& space, const Json& entries) {
  std::vector<T> w(space->size(), T(0));
  for (const auto& entry : entries) {
    auto state = to_internal(entry.at("state").get<std::vector<int>>());
    StateId id = space->index_of(state);
    const Json& p = entry.at("p");
    if constexpr (ScalarTraits<T>::exact) {
      if (!p.is_string()) throw InvalidArgument("exact measure weights must be \"num/den\" strings");
      w[id] += parse_rational(p.get<std::string>());
    } else {
      if (!p.is_number()) throw InvalidArgument("float measure weights must be numbers");
      w[id] += p.get<double>();
    }
  }
  return Measure<T>(space, std::move(w));
}

}  // namespace

AnyMeasure measure_from_json(const Json& j, std::size_t cap) {
  try {
    auto space = parse_space_spec(j.at("space").get<std::string>(), cap);
    Mode mode = parse_mode(j.at("mode").get<std::string>());
    if (mode == Mode::exact) return weights_from_json<Rational>(space, j.at("weights"));
    return weights_from_json<double>(space, j.at("weights"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed measure JSON: ") + e.what());
  }
}

template <class T>
Json kernel_json(const Kernel<T>& k) {
  Json rows = Json::array();
  for (StateId s = 0; s < k.size(); ++s) {
    Json to = Json::array();
    for (const auto& e : k.row(s)) {
      to.push_back(Json{{"state", to_external(k.space().state(e.to))}, {"p", scalar_json(e.p)}});
    }
    rows.push_back(Json{{"state", to_external(k.space().state(s))}, {"to", to}});
  }
  return Json{{"space", k.space().spec()},
              {"mode", to_string(ScalarTraits<T>::mode)},
              {"label", k.label()},
              {"rows", rows}};
}

template <class T>
Json distance_json(const Distance<T>& d) {
  if constexpr (ScalarTraits<T>::exact) {
    return d.to_string();
  } else {
    return d.to_double();
  }
}

template <class T>
Json limit_json(const LimitResult<T>& r, const std::string& block) {
  return Json{{"block", block},
              {"certified", r.certified},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"residual", scalar_json(r.residual)},
              {"closed_classes", r.closed_classes}};
}

template <class T>
Json violation_json(const Violation<T>& v) {
  return Json{{"index", v.index},
              {"schedule", to_string(Schedule::from_ops(v.base))},
              {"insert_at", v.insert_at},
              {"extra", to_string(v.extra)},
              {"schedule_with_insertion", to_string(Schedule::from_ops(with_insertion(v.base, v.insert_at, v.extra)))},
              {"d_mu", distance_json(v.d_mu)},
              {"d_nu", distance_json(v.d_nu)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

#define CENSOR_INSTANTIATE_SERIALIZE(T)                                  \
  template Json scalar_json<T>(const T&);                                \
  template Json measure_json<T>(const Measure<T>&);                      \
  template Json kernel_json<T>(const Kernel<T>&);                        \
  template Json distance_json<T>(const Distance<T>&);                    \
  template Json limit_json<T>(const LimitResult<T>&, const std::string&); \
  template Json violation_json<T>(const Violation<T>&);

CENSOR_INSTANTIATE_SERIALIZE(Rational)
CENSOR_INSTANTIATE_SERIALIZE(double)

#undef CENSOR_INSTANTIATE_SERIALIZE

}  // namespace censor
