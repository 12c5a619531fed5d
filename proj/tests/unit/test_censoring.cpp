#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "censor/errors.hpp"
#include "censor/experiment.hpp"
#include "censor/search.hpp"
#include "censor/verify.hpp"

#include "dense_oracle.hpp"

#include <vector>

using namespace censor;

namespace {

const char* kMn1 = "[t(2,4) t(3,4)]^1 t(1,4) t(2,4) [t(1,4) t(3,4)]^1";

SpacePtr perms4() { return StateSpace::enumerate(Permutations{4}); }

std::vector<std::pair<int, int>> swaps_of(std::span<const Op> ops) {
  std::vector<std::pair<int, int>> out;
  for (const auto& op : ops) {
    const auto& t = std::get<Transposition>(op);
    out.emplace_back(t.i + 1, t.j + 1);
  }
  return out;
}

InsertionExperiment<Rational> mn1_experiment(Metric metric = Metric::tv) {
  auto s = perms4();
  return {point_measure<Rational>(s, StateId{0}), parse_schedule(kMn1), 3, parse_op("t(3,4)"), metric, std::nullopt};
}

}  // namespace

TEST_CASE("the M=N=1 instance against the dense oracle") {
  oracle::SymmetricGroup g(4);
  auto base = parse_schedule(kMn1).flatten();
  auto mu_ref = oracle::run(g, swaps_of(base));
  auto nu_ref = oracle::run(g, swaps_of(with_insertion(base, 3, parse_op("t(3,4)"))));

  auto r = compare_insertion(mn1_experiment());
  CHECK(r.d_mu.value == oracle::tv_to_uniform(mu_ref));
  CHECK(r.d_nu.value == oracle::tv_to_uniform(nu_ref));
  // Both distances come out equal at this size, so the strict inequality does not hold.
  CHECK(r.d_mu.value == Rational(3, 16));
  CHECK(r.d_nu.value == Rational(3, 16));
  CHECK_FALSE(r.violation);
  CHECK(r.d_mu.to_string() == "3/16");

  auto l2 = compare_insertion(mn1_experiment(Metric::l2));
  CHECK(l2.d_mu.value == oracle::l2sq_to_uniform(mu_ref));
  CHECK(l2.d_nu.value == oracle::l2sq_to_uniform(nu_ref));
  CHECK(l2.d_mu.value == Rational(7, 768));
  CHECK(l2.d_nu.value == Rational(85, 12288));
  CHECK_FALSE(l2.violation);
  CHECK(l2.d_mu.to_string() == "sqrt(7/768)");
}

TEST_CASE("violations appear once the trailing block repeats") {
  oracle::SymmetricGroup g(4);
  auto s = perms4();
  for (int N = 2; N <= 4; ++N) {
    auto base = perm_counterexample_schedule(1, N, false);
    auto ops = base.flatten();
    InsertionExperiment<Rational> exp{point_measure<Rational>(s, StateId{0}), base, 3, parse_op("t(3,4)"),
                                      Metric::tv, std::nullopt};
    auto r = compare_insertion(exp);
    CHECK(r.d_mu.value == oracle::tv_to_uniform(oracle::run(g, swaps_of(ops))));
    CHECK(r.d_nu.value ==
          oracle::tv_to_uniform(oracle::run(g, swaps_of(with_insertion(ops, 3, parse_op("t(3,4)"))))));
    CHECK(r.violation);
  }
  CHECK(perm_counterexample_schedule(1, 1, true).flatten() ==
        with_insertion(parse_schedule(kMn1).flatten(), 3, parse_op("t(3,4)")));
}

TEST_CASE("insertion plumbing") {
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);
  auto extra = parse_op("t(1,2)");

  InsertionExperiment<Rational> empty{delta, Schedule{}, 0, extra, Metric::tv, std::nullopt};
  auto r = compare_insertion(empty);
  CHECK(r.d_mu.value == tv_distance(delta, pi));
  CHECK(r.d_nu.value == tv_distance(apply_schedule(delta, Schedule::from_ops({extra})), pi));

  auto base = parse_schedule("t(1,4) t(2,3)");
  InsertionExperiment<Rational> at_end{delta, base, 2, extra, Metric::tv, std::nullopt};
  auto appended = parse_schedule("t(1,4) t(2,3) t(1,2)");
  CHECK(compare_insertion(at_end).nu == apply_schedule(delta, appended));

  InsertionExperiment<Rational> past{delta, base, 3, extra, Metric::tv, std::nullopt};
  CHECK_THROWS_AS(compare_insertion(past), InvalidArgument);

  InsertionExperiment<Rational> foreign{delta, base, 0, parse_op("k(1)"), Metric::tv, std::nullopt};
  CHECK_THROWS_AS(compare_insertion(foreign), InvalidArgument);
}

TEST_CASE("repeating a block update changes nothing") {
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto base = parse_schedule("b{2,3,4} t(1,4) t(2,4) b{1,3,4}");
  for (auto [at, extra] : {std::pair{std::size_t{1}, "b{2,3,4}"}, std::pair{std::size_t{4}, "b{1,3,4}"}}) {
    InsertionExperiment<Rational> exp{delta, base, at, parse_op(extra), Metric::tv, std::nullopt};
    auto r = compare_insertion(exp);
    CHECK(r.nu == r.mu);
    CHECK_FALSE(r.violation);
  }
}

TEST_CASE("distances lie in the unit interval") {
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto family = parse_family("t(*,*)", *s);
  auto base = parse_schedule("t(1,2) t(3,4) t(1,3)");
  for (std::size_t at = 0; at <= 3; ++at)
    for (const auto& extra : family) {
      auto r = compare_insertion(InsertionExperiment<Rational>{delta, base, at, extra, Metric::tv, std::nullopt});
      CHECK(r.d_mu.value >= 0);
      CHECK(r.d_nu.value <= 1);
      CHECK(r.violation == (r.d_mu.value < r.d_nu.value));
    }
}

TEST_CASE("float comparisons use a margin") {
  Distance<double> a{Metric::tv, 0.1};
  Distance<double> b{Metric::tv, 0.1 + 1e-12};
  Distance<double> c{Metric::tv, 0.1 + 1e-6};
  CHECK_FALSE(strictly_closer(a, b));
  CHECK(strictly_closer(a, c));
  Distance<Rational> x{Metric::tv, Rational(1, 3)};
  Distance<Rational> y{Metric::tv, Rational(1, 3) + Rational(1, 1000000000000LL)};
  CHECK(strictly_closer(x, y));
}

TEST_CASE("stationary targets") {
  auto s = StateSpace::enumerate(Potts{triangle_graph(), 4});
  auto ops = parse_schedule("p(1;w=1/2;af) p(2;w=1/2;af)").flatten();
  CHECK(stationary_target<Rational>(s, ops) ==
        gibbs_measure<Rational>(s, Coupling::antiferro, PottsStrength::from_w(Rational(1, 2))));
  auto mixed = parse_schedule("p(1;w=1/2;af) p(2;w=1/3;af)").flatten();
  CHECK_THROWS_AS(stationary_target<Rational>(s, mixed), InvalidArgument);
  CHECK_THROWS_AS(stationary_target<Rational>(s, std::vector<Op>{}), InvalidArgument);
  auto p = perms4();
  CHECK(stationary_target<Rational>(p, std::vector<Op>{}) == uniform_measure<Rational>(p));
}

TEST_CASE("search over lazy transpositions") {
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);
  SearchConfig cfg;
  cfg.family = parse_family("t(*,4)", *s);
  cfg.max_length = 6;
  cfg.threads = 1;
  auto one = search(delta, pi, cfg);
  cfg.threads = 4;
  std::size_t streamed = 0;
  auto four = search<Rational>(delta, pi, cfg, [&](const Violation<Rational>&) { ++streamed; });
  CHECK(one.comparisons == count_candidates(3, 6));
  REQUIRE_FALSE(one.violations.empty());
  REQUIRE(one.violations.size() == four.violations.size());
  CHECK(streamed == four.violations.size());
  for (std::size_t i = 0; i < one.violations.size(); ++i) {
    CHECK(one.violations[i].index == four.violations[i].index);
    CHECK(one.violations[i].base == four.violations[i].base);
    CHECK(one.violations[i].d_nu.value == four.violations[i].d_nu.value);
    if (i > 0) CHECK(one.violations[i - 1].index < one.violations[i].index);
  }

  oracle::SymmetricGroup g(4);
  for (const auto& v : one.violations) {
    auto mu = oracle::run(g, swaps_of(v.base));
    auto nu = oracle::run(g, swaps_of(with_insertion(v.base, v.insert_at, v.extra)));
    CHECK(v.d_mu.value == oracle::tv_to_uniform(mu));
    CHECK(v.d_nu.value == oracle::tv_to_uniform(nu));
    CHECK(v.d_mu.value < v.d_nu.value);
  }

  cfg.stop_at_first = true;
  auto first = search(delta, pi, cfg);
  REQUIRE(first.violations.size() == 1);
  CHECK(first.stopped_early);
  CHECK(first.violations[0].index == one.violations[0].index);
}

TEST_CASE("search plumbing") {
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);
  SearchConfig cfg;
  cfg.family = {parse_op("t(1,2)")};
  cfg.max_length = 1;
  auto r = search(delta, pi, cfg);
  CHECK(r.comparisons == count_candidates(1, 1));
  CHECK(r.comparisons == 3);

  cfg.family = parse_family("t(*,*)", *s);
  cfg.max_length = 12;
  CHECK_THROWS_AS(search(delta, pi, cfg), CapExceeded);
  cfg.max_length = 0;
  CHECK_THROWS_AS(search(delta, pi, cfg), InvalidArgument);

  CHECK(count_candidates(3, 0) == 3);
  CHECK(count_candidates(3, 1) == 3 + 3 * 2 * 3);
  CHECK(count_candidates(1000, 40) == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("ferromagnetic search runs in float mode") {
  auto s = StateSpace::enumerate(Potts{triangle_graph(), 4});
  auto start = point_measure<double>(s, StateId{0});
  SearchConfig cfg;
  cfg.family = parse_family("p(*;J=2;f)", *s);
  cfg.max_length = 3;
  auto target = stationary_target<double>(s, cfg.family);
  auto r = search(start, target, cfg);
  CHECK(r.comparisons == count_candidates(3, 3));
  for (const auto& v : r.violations) CHECK(v.d_mu.value + kFloatMargin < v.d_nu.value);
}

TEST_CASE("verification reports") {
  CHECK(verify_perm_counterexample(PermOptions{}, Mode::exact).passed());
  CHECK(verify_perm_counterexample(PermOptions{20, 20, 1e-6, 0.12}, Mode::floating).passed());
  CHECK(verify_coloring_counterexample(1, 1, Mode::exact).passed());
  CHECK(verify_coloring_counterexample(2, 3, Mode::exact).passed());
  CHECK(verify_alternative_example(30, Mode::exact).passed());
  CHECK(verify_block_example(Mode::exact).passed());
  CHECK(verify_block_example(Mode::floating).passed());

  auto mn1 = verify_mn1(Mode::exact);
  REQUIRE_FALSE(mn1.passed());
  REQUIRE(mn1.first_failure() != nullptr);
  auto j = mn1.to_json();
  CHECK(j["passed"] == false);
  CHECK(j["report"] == mn1.name());
}

TEST_CASE("antiferromagnetic Potts sweep") {
  PottsOptions f{default_J_grid(), 30};
  auto rows = potts_sweep(f, Mode::floating);
  REQUIRE(rows.size() == 21);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].deviation_value <= rows[i - 1].deviation_value);
    CHECK(rows[i].epsilon_value <= rows[i - 1].epsilon_value);
  }
  CHECK(rows.back().deviation_value <= 1e-4);
  CHECK(verify_potts_antiferro(f, Mode::floating).passed());

  PottsOptions w{default_w_grid(), 30};
  auto exact = potts_sweep(w, Mode::exact);
  CHECK(exact.back().deviation == "0/1");
  CHECK(exact.back().epsilon == "0/1");
  CHECK(verify_potts_antiferro(w, Mode::exact).passed());

  PottsOptions single{{PottsStrength::from_J(3)}, 30};
  CHECK(potts_sweep(single, Mode::floating).size() == 1);
  CHECK_THROWS(potts_sweep(PottsOptions{{PottsStrength::from_J(3)}, 30}, Mode::exact));
}
