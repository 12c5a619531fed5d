#include "censor/verify.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <cmath>

namespace censor {

void Report::check(std::string name, bool passed, std::string detail) {
  checks_.push_back(Check{std::move(name), passed, std::move(detail)});
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::first_failure() const {
  for (const Check& c : checks_) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const Check& c : checks_) {
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return Json{{"report", name_}, {"passed", passed()}, {"checks", checks}, {"data", data_}};
}

template <class T>
Measure<T> push_forward(const Measure<T>& colorings, const TriangleBijection& bijection) {
  require_same_space(colorings, Measure<T>::unchecked(bijection.colorings,
                                                      std::vector<T>(bijection.colorings->size())));
  std::vector<T> w(bijection.permutations->size(), T(0));
  for (StateId c = 0; c < colorings.size(); ++c) w[bijection.forward[c]] += colorings.weights()[c];
  return Measure<T>::unchecked(bijection.permutations, std::move(w));
}

template Measure<Rational> push_forward<Rational>(const Measure<Rational>&, const TriangleBijection&);
template Measure<double> push_forward<double>(const Measure<double>&, const TriangleBijection&);

namespace {

std::string repeat_text(const std::string& body, int count) {
  return "[" + body + "]^" + std::to_string(count);
}

template <class T>
bool same_value(const T& a, const T& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return std::abs(a - b) <= kFloatSumTolerance;
  }
}

template <class T>
bool same_measure(const Measure<T>& a, const Measure<T>& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return tv_distance(a, b) <= kFloatSumTolerance;
  }
}

template <class T>
std::string str(const T& x) {
  return ScalarTraits<T>::to_string(x);
}

// sigma(2) = k, i.e. particle k sits at location 2 (0-based inputs).
StatePredicate at_location(int location, int particle) {
  return [=](std::span<const int> s) { return s[static_cast<std::size_t>(location)] == particle; };
}

std::vector<Op> ops_of(std::string_view text) { return parse_schedule(text).flatten(); }

template <class T>
void perm_counterexample(Report& report, const PermOptions& options) {
  auto space = StateSpace::enumerate(Permutations{4});
  KernelCache<T> cache(space);
  const auto delta = point_measure<T>(space, StateId{0});
  const auto pi = uniform_measure<T>(space);
  const auto pi1 = conditional_uniform<T>(space, at_location(0, 0));
  const Schedule left = parse_schedule("t(2,4) t(3,4)");
  const Schedule right = parse_schedule("t(1,4) t(3,4)");
  const T quarter = ScalarTraits<T>::ratio(1, 4);
  const T eighth = ScalarTraits<T>::ratio(1, 8);
  Json certificates = Json::array();

  auto first = block_limit(delta, left, cache);
  certificates.push_back(limit_json(first, "delta [" + to_string(left) + "]^inf"));
  report.check("delta [t(2,4) t(3,4)]^M -> pi1 (certified)", first.certified && same_measure(first.limit, pi1));

  const auto beta = apply_ops(first.limit, ops_of("t(1,4) t(2,4)"), cache);
  const auto beta_inserted = apply_ops(first.limit, ops_of("t(1,4) t(3,4) t(2,4)"), cache);
  const T p_beta = event_probability(beta, at_location(1, 0));
  const T p_inserted = event_probability(beta_inserted, at_location(1, 0));
  report.check("beta: particle 1 at location 2 w.p. 1/4", same_value(p_beta, quarter), str(p_beta));
  report.check("inserted t(3,4): particle 1 at location 2 w.p. 1/8", same_value(p_inserted, eighth),
               str(p_inserted));
  Json sigma2 = Json::object();
  bool uniform_sigma2 = true;
  for (int k = 0; k < 4; ++k) {
    T p = event_probability(beta, at_location(1, k));
    uniform_sigma2 = uniform_sigma2 && same_value(p, quarter);
    sigma2["P(sigma(2)=" + std::to_string(k + 1) + ")"] = scalar_json(p);
  }
  report.check("beta: sigma(2) uniform on {1,2,3,4}", uniform_sigma2);

  auto limit1 = block_limit(beta, right, cache);
  certificates.push_back(limit_json(limit1, "beta [" + to_string(right) + "]^inf"));
  report.check("limit (1): beta [t(1,4) t(3,4)]^N -> pi (certified)",
               limit1.certified && same_measure(limit1.limit, pi));

  auto limit2 = block_limit(beta_inserted, right, cache);
  certificates.push_back(limit_json(limit2, "beta' [" + to_string(right) + "]^inf"));
  const T p_alpha = event_probability(limit2.limit, at_location(1, 0));
  const T tv_alpha = tv_distance(limit2.limit, pi);
  report.check("limit (2): certified alpha with P(sigma(2)=1) = 1/8",
               limit2.certified && same_value(p_alpha, eighth), str(p_alpha));
  report.check("limit (2): alpha != pi, tv(alpha, pi) >= 1/8",
               !same_measure(limit2.limit, pi) && !(tv_alpha < eighth) , str(tv_alpha));

  const auto mu = apply_schedule(delta, perm_counterexample_schedule(options.M, options.N, false), cache);
  const auto nu = apply_schedule(delta, perm_counterexample_schedule(options.M, options.N, true), cache);
  const auto d_mu = distance(Metric::tv, mu, pi);
  const auto d_nu = distance(Metric::tv, nu, pi);
  report.check("tv(mu_{M,N}, pi) <= " + format_double(options.mu_tolerance),
               d_mu.to_double() <= options.mu_tolerance, d_mu.to_string());
  report.check("tv(nu_{M,N}, pi) >= " + format_double(options.nu_floor), d_nu.to_double() >= options.nu_floor,
               d_nu.to_string());
  report.check("tv(mu_{M,N}, pi) < tv(nu_{M,N}, pi)", strictly_closer(d_mu, d_nu),
               d_mu.to_string() + " vs " + d_nu.to_string());

  report.data() = Json{
      {"mode", to_string(ScalarTraits<T>::mode)},
      {"M", options.M},
      {"N", options.N},
      {"schedule", to_string(perm_counterexample_schedule(options.M, options.N, false))},
      {"schedule_with_insertion", to_string(perm_counterexample_schedule(options.M, options.N, true))},
      {"d_mu", distance_json(d_mu)},
      {"d_nu", distance_json(d_nu)},
      {"violation", strictly_closer(d_mu, d_nu)},
      {"statistics",
       Json{{"P_mu(sigma(2)=1)", scalar_json(event_probability(mu, at_location(1, 0)))},
            {"P_nu(sigma(2)=1)", scalar_json(event_probability(nu, at_location(1, 0)))},
            {"P_beta(sigma(2)=1)", scalar_json(p_beta)},
            {"P_beta'(sigma(2)=1)", scalar_json(p_inserted)},
            {"beta sigma(2) law", sigma2},
            {"P_alpha(sigma(2)=1)", scalar_json(p_alpha)},
            {"tv(alpha, pi)", scalar_json(tv_alpha)}}},
      {"certificates", certificates}};
}

template <class T>
void coloring_counterexample(Report& report, int M, int N) {
  const auto bijection = triangle_bijection();
  const auto& colorings = bijection.colorings;
  const auto& perms = bijection.permutations;
  KernelCache<T> color_cache(colorings);
  KernelCache<T> perm_cache(perms);

  const std::vector<int> start{0, 1, 2};
  const StateId start_id = colorings->index_of(start);
  report.check("coloring (1,2,3) maps to the identity permutation", bijection.forward[start_id] == 0);
  const auto delta_c = point_measure<T>(colorings, start_id);
  const auto delta_p = point_measure<T>(perms, StateId{0});

  Json runs = Json::array();
  for (bool inserted : {false, true}) {
    const auto c_ops = coloring_counterexample_schedule(M, N, inserted).flatten();
    const auto p_ops = perm_counterexample_schedule(M, N, inserted).flatten();
    const auto c_path = trajectory(delta_c, c_ops, color_cache);
    const auto p_path = trajectory(delta_p, p_ops, perm_cache);
    std::size_t equal = 0;
    for (std::size_t s = 0; s < c_path.size(); ++s) {
      const bool same = same_measure(push_forward(c_path[s], bijection), p_path[s]);
      equal += same;
      report.check(std::string(inserted ? "nu" : "mu") + " step " + std::to_string(s) + ": pushforward equals permutation run",
                   same);
    }
    const auto d_c = distance(Metric::tv, c_path.back(), uniform_measure<T>(colorings));
    const auto d_p = distance(Metric::tv, p_path.back(), uniform_measure<T>(perms));
    runs.push_back(Json{{"run", inserted ? "nu" : "mu"},
                        {"schedule", to_string(coloring_counterexample_schedule(M, N, inserted))},
                        {"steps_compared", c_path.size()},
                        {"steps_equal", equal},
                        {"tv_coloring", distance_json(d_c)},
                        {"tv_permutation", distance_json(d_p)}});
  }
  // Violation flags computed independently in both spaces.
  auto color_result = compare_insertion<T>(
      {delta_c, coloring_counterexample_schedule(M, N, false), static_cast<std::size_t>(2 * M + 1), Recolor{2},
       Metric::tv, std::nullopt},
      color_cache);
  auto perm_result = compare_insertion<T>(
      {delta_p, perm_counterexample_schedule(M, N, false), static_cast<std::size_t>(2 * M + 1),
       Transposition{2, 3}, Metric::tv, std::nullopt},
      perm_cache);
  const bool flags_match = color_result.violation == perm_result.violation;
  report.check("violation flag matches the permutation run", flags_match,
               std::string(color_result.violation ? "violation" : "no violation") + " in both");
  report.data() = Json{{"mode", to_string(ScalarTraits<T>::mode)},
                       {"M", M},
                       {"N", N},
                       {"runs", runs},
                       {"d_mu", distance_json(color_result.d_mu)},
                       {"d_nu", distance_json(color_result.d_nu)},
                       {"violation", color_result.violation}};
}

template <class T>
void mn1(Report& report, Metric metric) {
  auto space = StateSpace::enumerate(Permutations{4});
  InsertionExperiment<T> e{point_measure<T>(space, StateId{0}),
                           parse_schedule("[t(2,4) t(3,4)]^1 t(1,4) t(2,4) [t(1,4) t(3,4)]^1"), 3,
                           Transposition{2, 3}, metric, std::nullopt};
  auto r = compare_insertion(e);
  report.check("d(mu, pi) < d(nu, pi) at M = N = 1", r.violation,
               r.d_mu.to_string() + " vs " + r.d_nu.to_string());
  auto other = distance(metric == Metric::tv ? Metric::l2 : Metric::tv, r.mu, r.target);
  auto other_nu = distance(metric == Metric::tv ? Metric::l2 : Metric::tv, r.nu, r.target);
  report.data() = Json{{"mode", to_string(ScalarTraits<T>::mode)},
                       {"metric", to_string(metric)},
                       {"space", space->spec()},
                       {"schedule", to_string(e.base)},
                       {"insert_at", e.insert_at},
                       {"extra", to_string(e.extra)},
                       {"schedule_with_insertion",
                        to_string(Schedule::from_ops(with_insertion(e.base.flatten(), e.insert_at, e.extra)))},
                       {"d_mu", distance_json(r.d_mu)},
                       {"d_nu", distance_json(r.d_nu)},
                       {"violation", r.violation},
                       {"other_metric",
                        Json{{"metric", to_string(other.metric)},
                             {"d_mu", distance_json(other)},
                             {"d_nu", distance_json(other_nu)}}}};
}

template <class T>
void alternative(Report& report, int M) {
  auto space = StateSpace::enumerate(Permutations{4});
  KernelCache<T> cache(space);
  const auto delta = point_measure<T>(space, StateId{0});
  const auto pi = uniform_measure<T>(space);
  const auto pi1 = conditional_uniform<T>(space, at_location(0, 0));
  const auto suffix = ops_of("t(1,4) t(2,4) t(1,3)");
  const auto suffix_inserted = ops_of("t(1,4) t(2,4) t(3,4) t(1,3)");

  auto prefix = block_limit(delta, parse_schedule("t(2,4) t(3,4)"), cache);
  report.check("prefix limit is pi1 (certified)", prefix.certified && same_measure(prefix.limit, pi1));
  const auto limit = apply_ops(prefix.limit, suffix, cache);
  const auto limit_inserted = apply_ops(prefix.limit, suffix_inserted, cache);
  report.check("pi1 t(1,4) t(2,4) t(1,3) = pi", same_measure(limit, pi), str(tv_distance(limit, pi)));
  const T gap = tv_distance(limit_inserted, pi);
  report.check("inserting t(3,4) before t(1,3) gives a limit != pi", !same_measure(limit_inserted, pi), str(gap));

  // First "particle k at location i" event whose probability is not 1/4.
  Json witness = nullptr;
  const T quarter = ScalarTraits<T>::ratio(1, 4);
  for (int particle = 0; particle < 4 && witness.is_null(); ++particle) {
    for (int location = 0; location < 4; ++location) {
      T p = event_probability(limit_inserted, at_location(location, particle));
      if (!same_value(p, quarter)) {
        witness = Json{{"event", "particle " + std::to_string(particle + 1) + " at location " +
                                     std::to_string(location + 1)},
                       {"p", scalar_json(p)},
                       {"p_pi", scalar_json(quarter)}};
        break;
      }
    }
  }
  report.check("a location event witnesses the difference", !witness.is_null());

  Json finite = nullptr;
  if (M >= 0) {
    std::string prefix_text = M > 0 ? repeat_text("t(2,4) t(3,4)", M) + " " : "";
    auto mu = apply_schedule(delta, parse_schedule(prefix_text + "t(1,4) t(2,4) t(1,3)"), cache);
    auto nu = apply_schedule(delta, parse_schedule(prefix_text + "t(1,4) t(2,4) t(3,4) t(1,3)"), cache);
    finite = Json{{"M", M}, {"d_mu", scalar_json(tv_distance(mu, pi))}, {"d_nu", scalar_json(tv_distance(nu, pi))}};
  }
  report.data() = Json{{"mode", to_string(ScalarTraits<T>::mode)},
                       {"certificate", limit_json(prefix, "delta [t(2,4) t(3,4)]^inf")},
                       {"tv(limit, pi)", scalar_json(tv_distance(limit, pi))},
                       {"tv(limit_inserted, pi)", scalar_json(gap)},
                       {"witness", witness},
                       {"finite", finite}};
}

template <class T>
void block_example(Report& report) {
  auto space = StateSpace::enumerate(Permutations{4});
  KernelCache<T> cache(space);
  const auto delta = point_measure<T>(space, StateId{0});
  const auto pi = uniform_measure<T>(space);
  const auto pi1 = conditional_uniform<T>(space, at_location(0, 0));

  const auto shuffled = apply_ops(delta, ops_of("b{2,3,4}"), cache);
  report.check("delta b{2,3,4} = pi1", same_measure(shuffled, pi1));
  const Schedule base = parse_schedule("b{2,3,4} t(1,4) t(2,4) b{1,3,4}");
  auto r = compare_insertion<T>({delta, base, 2, Transposition{2, 3}, Metric::tv, pi}, cache);
  report.check("mu = delta b{2,3,4} t(1,4) t(2,4) b{1,3,4} = pi", same_measure(r.mu, pi));
  const T p = event_probability(r.nu, at_location(1, 0));
  report.check("nu: P(sigma(2)=1) = 1/8", same_value(p, ScalarTraits<T>::ratio(1, 8)), str(p));
  report.check("nu != pi", !same_measure(r.nu, pi), r.d_nu.to_string());
  report.data() = Json{{"mode", to_string(ScalarTraits<T>::mode)},
                       {"schedule", to_string(base)},
                       {"schedule_with_insertion", to_string(Schedule::from_ops(with_insertion(base.flatten(), 2, Transposition{2, 3})))},
                       {"d_mu", distance_json(r.d_mu)},
                       {"d_nu", distance_json(r.d_nu)},
                       {"violation", r.violation},
                       {"P_nu(sigma(2)=1)", scalar_json(p)}};
}

template <class T>
T max_row_deviation(const SpacePtr& potts, const SpacePtr& colorings, const PottsStrength& strength) {
  std::vector<StateId> embed(colorings->size());
  for (StateId c = 0; c < colorings->size(); ++c) embed[c] = potts->index_of(colorings->state(c));
  T worst = 0;
  std::vector<T> diff(potts->size(), T(0));
  for (int v = 0; v < potts->width(); ++v) {
    const auto site = potts_kernel<T>(potts, v, Coupling::antiferro, strength);
    const auto recolor = recolor_kernel<T>(colorings, v);
    for (StateId c = 0; c < colorings->size(); ++c) {
      std::vector<StateId> touched;
      for (const auto& e : site.row(embed[c])) {
        diff[e.to] += e.p;
        touched.push_back(e.to);
      }
      for (const auto& e : recolor.row(c)) {
        diff[embed[e.to]] -= e.p;
        touched.push_back(embed[e.to]);
      }
      T row = 0;
      for (StateId s : touched) {
        row += ScalarTraits<T>::abs(diff[s]);
        diff[s] = 0;
      }
      row /= 2;
      if (worst < row) worst = row;
    }
  }
  return worst;
}

template <class T>
std::vector<PottsSweepRow> sweep(const PottsOptions& options) {
  const auto potts = StateSpace::enumerate(Potts{triangle_graph(), 4});
  const auto colorings = StateSpace::enumerate(Colorings{triangle_graph(), 4});
  const auto all_one = point_measure<T>(potts, StateId{0});
  const auto slice = conditional_uniform<T>(potts, [&](std::span<const int> s) {
    return s[0] == 0 && is_proper_coloring(*potts->graph(), s);
  });

  std::vector<PottsStrength> grid = options.grid;
  std::stable_sort(grid.begin(), grid.end(),
                   [](const PottsStrength& a, const PottsStrength& b) { return a.as_J() < b.as_J(); });

  std::vector<PottsSweepRow> rows;
  for (const PottsStrength& strength : grid) {
    KernelCache<T> cache(potts);
    auto op = [&](int v) { return Op{PottsUpdate{v - 1, Coupling::antiferro, strength}}; };
    std::vector<Op> base{op(2), op(3), op(1), op(2)};
    for (int k = 0; k < options.N; ++k) {
      base.push_back(op(1));
      base.push_back(op(3));
    }
    const auto warmed = apply_ops(all_one, std::vector<Op>{op(2), op(3)}, cache);
    auto r = compare_insertion<T>({all_one, Schedule::from_ops(base), 3, op(3), Metric::tv, std::nullopt}, cache);

    PottsSweepRow row{strength, strength.as_J(), {}, {}, {}, {}, 0, 0, r.violation, false};
    T deviation = max_row_deviation<T>(potts, colorings, strength);
    T epsilon = tv_distance(warmed, slice);
    row.deviation = scalar_json(deviation);
    row.epsilon = scalar_json(epsilon);
    row.deviation_value = ScalarTraits<T>::to_double(deviation);
    row.epsilon_value = ScalarTraits<T>::to_double(epsilon);
    row.d_mu = distance_json(r.d_mu);
    row.d_nu = distance_json(r.d_nu);
    rows.push_back(std::move(row));
  }
  // Threshold: first grid point from which every larger J shows a violation.
  std::size_t k = rows.size();
  while (k > 0 && rows[k - 1].violation) --k;
  if (k < rows.size()) rows[k].threshold = true;
  return rows;
}

template <class F>
auto dispatch(Mode mode, F&& f) {
  if (mode == Mode::exact) return f(Rational{});
  return f(double{});
}

}  // namespace

Schedule perm_counterexample_schedule(int M, int N, bool inserted) {
  if (M < 1 || N < 1) throw InvalidArgument("M and N must be at least 1");
  std::string text = repeat_text("t(2,4) t(3,4)", M) + " t(1,4) " + (inserted ? "t(3,4) " : "") + "t(2,4) " +
                     repeat_text("t(1,4) t(3,4)", N);
  return parse_schedule(text);
}

Schedule coloring_counterexample_schedule(int M, int N, bool inserted) {
  if (M < 1 || N < 1) throw InvalidArgument("M and N must be at least 1");
  std::string text = repeat_text("k(2) k(3)", M) + " k(1) " + (inserted ? "k(3) " : "") + "k(2) " +
                     repeat_text("k(1) k(3)", N);
  return parse_schedule(text);
}

Report verify_perm_counterexample(const PermOptions& options, Mode mode) {
  if (options.M < 1 || options.N < 1) throw InvalidArgument("M and N must be at least 1");
  Report report("perm");
  dispatch(mode, [&](auto tag) {
    perm_counterexample<decltype(tag)>(report, options);
    return 0;
  });
  return report;
}

Report verify_coloring_counterexample(int M, int N, Mode mode) {
  if (M < 1 || N < 1) throw InvalidArgument("M and N must be at least 1");
  Report report("coloring");
  dispatch(mode, [&](auto tag) {
    coloring_counterexample<decltype(tag)>(report, M, N);
    return 0;
  });
  return report;
}

Report verify_mn1(Mode mode, Metric metric) {
  Report report("mn1");
  dispatch(mode, [&](auto tag) {
    mn1<decltype(tag)>(report, metric);
    return 0;
  });
  return report;
}

Report verify_alternative_example(int M, Mode mode) {
  Report report("alternative");
  dispatch(mode, [&](auto tag) {
    alternative<decltype(tag)>(report, M);
    return 0;
  });
  return report;
}

Report verify_block_example(Mode mode) {
  Report report("block");
  dispatch(mode, [&](auto tag) {
    block_example<decltype(tag)>(report);
    return 0;
  });
  return report;
}

std::vector<PottsStrength> default_J_grid() {
  std::vector<PottsStrength> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(PottsStrength::from_J(0.5 * k));
  return grid;
}

std::vector<PottsStrength> default_w_grid() {
  std::vector<PottsStrength> grid;
  for (long den : {1L, 2L, 4L, 8L, 16L, 64L, 256L, 1024L, 4096L, 16384L}) {
    grid.push_back(PottsStrength::from_w(Rational(1, den)));
  }
  grid.push_back(PottsStrength::from_w(Rational(0)));
  return grid;
}

std::vector<PottsSweepRow> potts_sweep(const PottsOptions& options, Mode mode) {
  if (options.grid.empty()) throw InvalidArgument("Potts sweep needs a nonempty grid");
  if (options.N < 1) throw InvalidArgument("N must be at least 1");
  return dispatch(mode, [&](auto tag) { return sweep<decltype(tag)>(options); });
}

Report verify_potts_antiferro(const PottsOptions& options, Mode mode) {
  Report report("potts");
  const auto rows = potts_sweep(options, mode);

  bool monotone = true;
  bool epsilon_monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    monotone = monotone && rows[k].deviation_value <= rows[k - 1].deviation_value;
    epsilon_monotone = epsilon_monotone && rows[k].epsilon_value <= rows[k - 1].epsilon_value;
  }
  report.check("row deviation from the coloring kernel is nonincreasing in J", monotone);
  report.check("distance to the proper sigma(1)=1 slice is nonincreasing in J", epsilon_monotone);
  for (const auto& row : rows) {
    if (std::abs(row.J - 10.0) < 1e-9) {
      report.check("row deviation at J=10 <= 1e-4", row.deviation_value <= 1e-4, format_double(row.deviation_value));
    }
    if (row.strength.is_exact() && row.strength.w() == 0) {
      report.check("row deviation at w=0 is exactly 0", row.deviation == Json("0/1") || row.deviation == Json(0.0),
                   row.deviation.dump());
    }
  }
  const auto threshold = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.threshold; });
  report.check("violation for every grid J above a finite threshold", threshold != rows.end(),
               threshold != rows.end() ? threshold->strength.to_string() : "no violation at the largest J");

  Json table = Json::array();
  for (const auto& row : rows) {
    table.push_back(Json{{"strength", row.strength.to_string()},
                         {"J", std::isinf(row.J) ? Json("inf") : Json(row.J)},
                         {"deviation", row.deviation},
                         {"epsilon", row.epsilon},
                         {"d_mu", row.d_mu},
                         {"d_nu", row.d_nu},
                         {"violation", row.violation},
                         {"threshold", row.threshold}});
  }
  report.data() = Json{{"mode", to_string(mode)}, {"N", options.N}, {"rows", table}};
  return report;
}

}  // namespace censor
