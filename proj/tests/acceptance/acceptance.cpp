// Acceptance checks, one per criterion. With no arguments every criterion
// runs; otherwise only the numbered ones. Exit status is nonzero if any
// selected criterion fails.

#include "censor/errors.hpp"
#include "censor/experiment.hpp"
#include "censor/kernel.hpp"
#include "censor/limit.hpp"
#include "censor/search.hpp"
#include "censor/serialize.hpp"
#include "censor/verify.hpp"

#include "dense_oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace censor;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

// Accumulates named conditions; the first failure becomes the detail.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
    ++count_;
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  Outcome outcome() const {
    if (!failure_.empty()) return {false, "failed: " + failure_ + (notes_.empty() ? "" : " (" + notes_ + ")")};
    return {true, std::to_string(count_) + " checks; " + notes_};
  }

 private:
  std::size_t count_ = 0;
  std::string failure_;
  std::string notes_;
};

std::string str(const Rational& r) { return format_rational(r); }

SpacePtr perms4() { return StateSpace::enumerate(Permutations{4}); }

bool location2_holds(std::span<const int> st, int particle) { return st[1] == particle; }

template <class T>
T p_sigma2_is(const Measure<T>& m, int particle) {
  return event_probability(m, [particle](std::span<const int> st) { return location2_holds(st, particle); });
}

template <class T>
Measure<T> pi1(const SpacePtr& s) {
  return conditional_uniform<T>(s, [](std::span<const int> st) { return st[0] == 0; });
}

Measure<Rational> run(const Measure<Rational>& m, const char* schedule) {
  return apply_schedule(m, parse_schedule(schedule));
}

std::vector<std::pair<int, int>> swaps_of(std::span<const Op> ops) {
  std::vector<std::pair<int, int>> out;
  for (const auto& op : ops) {
    const auto& t = std::get<Transposition>(op);
    out.emplace_back(t.i + 1, t.j + 1);
  }
  return out;
}

// Oracle vector for pi_1, indexed like oracle::SymmetricGroup.
std::vector<Rational> oracle_pi1(const oracle::SymmetricGroup& g) {
  std::vector<Rational> v(g.size(), Rational(0));
  for (std::size_t a = 0; a < g.size(); ++a)
    if (g.elements[a][0] == 1) v[a] = Rational(1, 6);
  return v;
}

Rational oracle_p_sigma2(const oracle::SymmetricGroup& g, const std::vector<Rational>& v, int particle) {
  Rational p = 0;
  for (std::size_t a = 0; a < g.size(); ++a)
    if (g.elements[a][1] == particle) p += v[a];
  return p;
}

Outcome criterion_1() {
  Tally t;
  auto s = perms4();
  auto beta = run(pi1<Rational>(s), "t(1,4) t(2,4)");
  auto inserted = run(pi1<Rational>(s), "t(1,4) t(3,4) t(2,4)");
  Rational p_beta = p_sigma2_is(beta, 0);
  Rational p_ins = p_sigma2_is(inserted, 0);
  t.require(p_beta == Rational(1, 4), "P_beta(particle 1 at location 2) = 1/4");
  t.require(p_ins == Rational(1, 8), "with t(3,4) inserted, P(particle 1 at location 2) = 1/8");

  oracle::SymmetricGroup g(4);
  auto ob = oracle::times(oracle::times(oracle_pi1(g), oracle::lazy_swap(g, 1, 4)), oracle::lazy_swap(g, 2, 4));
  auto oi = oracle::times(oracle::times(oracle::times(oracle_pi1(g), oracle::lazy_swap(g, 1, 4)),
                                        oracle::lazy_swap(g, 3, 4)),
                          oracle::lazy_swap(g, 2, 4));
  t.require(oracle_p_sigma2(g, ob, 1) == p_beta, "dense oracle agrees on beta");
  t.require(oracle_p_sigma2(g, oi, 1) == p_ins, "dense oracle agrees on the inserted run");
  t.note("P_beta=" + str(p_beta) + ", P_inserted=" + str(p_ins));
  return t.outcome();
}

Outcome criterion_2() {
  Tally t;
  auto s = perms4();
  auto beta = run(pi1<Rational>(s), "t(1,4) t(2,4)");
  std::string law;
  for (int k = 0; k < 4; ++k) {
    Rational p = p_sigma2_is(beta, k);
    t.require(p == Rational(1, 4), "P_beta(sigma(2)=" + std::to_string(k + 1) + ") = 1/4");
    law += (k ? "," : "") + str(p);
  }
  t.note("sigma(2) law under beta: " + law);
  return t.outcome();
}

Outcome criterion_3() {
  Tally t;
  auto s = perms4();
  KernelCache<Rational> cache(s);
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);

  auto first = block_limit(delta, parse_schedule("t(2,4) t(3,4)"), cache);
  t.require(first.certified && first.limit == pi1<Rational>(s), "leading block certified with limit pi_1");

  auto beta = apply_schedule(first.limit, parse_schedule("t(1,4) t(2,4)"), cache);
  auto uninserted = block_limit(beta, parse_schedule("t(1,4) t(3,4)"), cache);
  t.require(uninserted.certified, "trailing block certified without insertion");
  t.require(uninserted.limit == pi, "uninserted limit is exactly pi");

  auto pre_alpha = apply_schedule(first.limit, parse_schedule("t(1,4) t(3,4) t(2,4)"), cache);
  auto alpha = block_limit(pre_alpha, parse_schedule("t(1,4) t(3,4)"), cache);
  t.require(alpha.certified, "trailing block certified with insertion");
  Rational p_alpha = p_sigma2_is(alpha.limit, 0);
  Rational tv_alpha = tv_distance(alpha.limit, pi);
  t.require(p_alpha == Rational(1, 8), "P_alpha(sigma(2)=1) = 1/8");
  t.require(tv_alpha >= Rational(1, 8), "tv(alpha, pi) >= 1/8");

  const int M = 20, N = 20;
  auto fdelta = point_measure<double>(s, StateId{0});
  auto fpi = uniform_measure<double>(s);
  double tv_mu = tv_distance(apply_schedule(fdelta, perm_counterexample_schedule(M, N, false)), fpi);
  double tv_nu = tv_distance(apply_schedule(fdelta, perm_counterexample_schedule(M, N, true)), fpi);
  t.require(tv_mu <= 1e-6, "float tv(mu, pi) <= 1e-6 at M=N=20");
  t.require(tv_nu >= 0.12, "float tv(nu, pi) >= 0.12 at M=N=20");

  std::ostringstream os;
  os << "tv(alpha,pi)=" << str(tv_alpha) << ", M=N=" << M << " float tv(mu,pi)=" << format_double(tv_mu)
     << " tv(nu,pi)=" << format_double(tv_nu);
  t.note(os.str());
  return t.outcome();
}

Outcome criterion_4() {
  Tally t;
  auto s = perms4();
  auto base = parse_schedule("[t(2,4) t(3,4)]^1 t(1,4) t(2,4) [t(1,4) t(3,4)]^1");
  auto extra = parse_op("t(3,4)");

  oracle::SymmetricGroup g(4);
  auto flat = base.flatten();
  Rational ref_mu = oracle::tv_to_uniform(oracle::run(g, swaps_of(flat)));
  Rational ref_nu = oracle::tv_to_uniform(oracle::run(g, swaps_of(with_insertion(flat, 3, extra))));

  InsertionExperiment<Rational> exp{point_measure<Rational>(s, StateId{0}), base, 3, extra, Metric::tv, std::nullopt};
  auto r = compare_insertion(exp);
  t.require(r.d_mu.value == ref_mu, "engine d_mu matches the dense oracle");
  t.require(r.d_nu.value == ref_nu, "engine d_nu matches the dense oracle");
  t.require(r.violation == (ref_mu < ref_nu), "violation flag matches the oracle comparison");
  t.require(ref_mu < ref_nu, "strict inequality d_tv(mu,pi) < d_tv(nu,pi) at M=N=1");
  t.note("d_tv(mu,pi)=" + str(r.d_mu.value) + ", d_tv(nu,pi)=" + str(r.d_nu.value) + ", oracle " + str(ref_mu) +
         " vs " + str(ref_nu));
  return t.outcome();
}

Outcome criterion_5() {
  Tally t;
  auto bij = triangle_bijection();
  auto col_start = point_measure<Rational>(bij.colorings, std::vector<int>{0, 1, 2});
  auto perm_start = point_measure<Rational>(bij.permutations, StateId{0});
  t.require(push_forward(col_start, bij) == perm_start, "coloring (1,2,3) maps to the identity");

  KernelCache<Rational> ccache(bij.colorings);
  KernelCache<Rational> pcache(bij.permutations);
  std::size_t equalities = 0;
  for (bool inserted : {false, true}) {
    auto cops = coloring_counterexample_schedule(1, 1, inserted).flatten();
    auto pops = perm_counterexample_schedule(1, 1, inserted).flatten();
    auto ctraj = trajectory(col_start, cops, ccache);
    auto ptraj = trajectory(perm_start, pops, pcache);
    t.require(ctraj.size() == ptraj.size(), "runs have equal length");
    for (std::size_t k = 0; k < ctraj.size() && k < ptraj.size(); ++k) {
      t.require(push_forward(ctraj[k], bij) == ptraj[k],
                std::string(inserted ? "nu" : "mu") + " step " + std::to_string(k) + " pushforward equality");
      if (!inserted) ++equalities;
    }
  }
  t.require(equalities == 7, "seven intermediate measures in the uninserted run");

  auto make = [](const SpacePtr& space, const Schedule& base, const Op& extra, std::vector<int> start) {
    return InsertionExperiment<Rational>{point_measure<Rational>(space, start), base, 3, extra, Metric::tv,
                                         std::nullopt};
  };
  auto rc = compare_insertion(make(bij.colorings, coloring_counterexample_schedule(1, 1, false), parse_op("k(3)"),
                                   {0, 1, 2}));
  auto rp = compare_insertion(make(bij.permutations, perm_counterexample_schedule(1, 1, false), parse_op("t(3,4)"),
                                   {0, 1, 2, 3}));
  t.require(rc.d_mu.value == rp.d_mu.value && rc.d_nu.value == rp.d_nu.value, "distances agree across the bijection");
  t.require(rc.violation == rp.violation, "violation flags agree");
  t.note(std::to_string(equalities) + " equalities in the mu run, violation flag " +
         (rc.violation ? "true" : "false") + " on both");
  return t.outcome();
}

Outcome criterion_6() {
  Tally t;
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);
  t.require(run(delta, "b{2,3,4}") == pi1<Rational>(s), "delta b{2,3,4} = pi_1");
  t.require(run(delta, "b{2,3,4} t(1,4) t(2,4) b{1,3,4}") == pi, "block mu = pi");
  auto nu = run(delta, "b{2,3,4} t(1,4) t(3,4) t(2,4) b{1,3,4}");
  Rational p = p_sigma2_is(nu, 0);
  t.require(p == Rational(1, 8), "P_nu(sigma(2)=1) = 1/8");
  t.note("P_nu(sigma(2)=1)=" + str(p) + ", tv(nu,pi)=" + str(tv_distance(nu, pi)));
  return t.outcome();
}

Outcome criterion_7() {
  Tally t;
  auto s = perms4();
  KernelCache<Rational> cache(s);
  auto pi = uniform_measure<Rational>(s);
  auto lim = block_limit(point_measure<Rational>(s, StateId{0}), parse_schedule("t(2,4) t(3,4)"), cache);
  t.require(lim.certified && lim.limit == pi1<Rational>(s), "certified pi_1");
  auto plain = apply_schedule(lim.limit, parse_schedule("t(1,4) t(2,4) t(1,3)"), cache);
  auto inserted = apply_schedule(lim.limit, parse_schedule("t(1,4) t(2,4) t(3,4) t(1,3)"), cache);
  t.require(plain == pi, "suffix t(1,4) t(2,4) t(1,3) yields pi");
  Rational tv = tv_distance(inserted, pi);
  t.require(tv > 0, "inserted run differs from pi");
  t.note("tv(inserted, pi)=" + str(tv));
  return t.outcome();
}

Outcome criterion_8() {
  Tally t;
  auto rows = potts_sweep(PottsOptions{default_J_grid(), 30}, Mode::floating);
  t.require(rows.size() == 21, "grid 0, 0.5, ..., 10");
  for (std::size_t i = 1; i < rows.size(); ++i)
    t.require(rows[i].deviation_value <= rows[i - 1].deviation_value,
              "deviation nonincreasing at J=" + format_double(rows[i].J));
  t.require(!rows.empty() && rows.back().J == 10 && rows.back().deviation_value <= 1e-4, "deviation <= 1e-4 at J=10");

  // Independent row comparison at J=10.
  auto potts = StateSpace::enumerate(Potts{triangle_graph(), 4});
  auto col = StateSpace::enumerate(Colorings{triangle_graph(), 4});
  double worst = 0;
  for (int v = 0; v < 3; ++v) {
    auto k = potts_kernel<double>(potts, v, Coupling::antiferro, PottsStrength::from_J(10));
    auto r = recolor_kernel<double>(col, v);
    for (StateId c = 0; c < col->size(); ++c) {
      StateId a = potts->index_of(col->state(c));
      double gap = 0;
      for (StateId b = 0; b < potts->size(); ++b) {
        auto target = col->find(potts->state(b));
        gap += std::abs(k.at(a, b) - (target ? r.at(c, *target) : 0.0));
      }
      worst = std::max(worst, gap / 2);
    }
  }
  t.require(std::abs(worst - rows.back().deviation_value) <= 1e-15, "row-TV oracle agrees at J=10");

  auto exact = potts_sweep(PottsOptions{{PottsStrength::from_w(0)}, 30}, Mode::exact);
  t.require(exact.size() == 1 && exact[0].deviation == "0/1", "deviation exactly 0 at w=0");

  std::optional<double> threshold;
  for (const auto& row : rows)
    if (row.threshold) threshold = row.J;
  t.require(threshold.has_value(), "a finite threshold exists on the grid");
  if (threshold) {
    for (const auto& row : rows)
      if (row.J >= *threshold) t.require(row.violation, "violation at J=" + format_double(row.J));
  }
  std::ostringstream os;
  os << "deviation at J=10: " << format_double(rows.back().deviation_value)
     << ", threshold J=" << (threshold ? format_double(*threshold) : std::string("none"));
  t.note(os.str());
  return t.outcome();
}

Outcome criterion_9() {
  Tally t;
  std::vector<SpacePtr> spaces{
      StateSpace::enumerate(Permutations{3}),
      StateSpace::enumerate(Permutations{4}),
      StateSpace::enumerate(Permutations{5}),
      StateSpace::enumerate(Permutations{7}),
      StateSpace::enumerate(Colorings{triangle_graph(), 4}),
      StateSpace::enumerate(Colorings{load_graph("K4"), 5}),
      StateSpace::enumerate(Colorings{load_graph("cycle5"), 3}),
      StateSpace::enumerate(Colorings{load_graph("path4"), 3}),
  };
  std::size_t kernels = 0;
  for (const auto& s : spaces) {
    t.require(s->size() <= 10000, s->spec() + " has at most 10^4 states");
    auto pi = uniform_measure<Rational>(s);
    auto check = [&](const Kernel<Rational>& k) {
      ++kernels;
      t.require(apply(pi, k) == pi, "pi K = pi for " + k.label() + " on " + s->spec());
    };
    int n = s->width();
    if (s->is_permutations()) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) check(transpose_kernel<Rational>(s, i, j));
      // Every block on small spaces; contiguous and spread blocks on the larger ones.
      if (n <= 5) {
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
          std::vector<int> block;
          for (int i = 0; i < n; ++i)
            if (mask >> i & 1) block.push_back(i);
          check(block_kernel<Rational>(s, block));
        }
      } else {
        check(block_kernel<Rational>(s, {0, 1, 2}));
        check(block_kernel<Rational>(s, {1, 3, 5, 6}));
        check(block_kernel<Rational>(s, {0, 2, 3, 4, 6}));
      }
    } else {
      for (int v = 0; v < n; ++v) check(recolor_kernel<Rational>(s, v));
    }
  }

  std::size_t pairs = 0;
  double worst = 0;
  for (int q : {2, 3, 4}) {
    auto s = StateSpace::enumerate(Potts{triangle_graph(), q});
    for (auto coupling : {Coupling::antiferro, Coupling::ferro}) {
      for (const auto& w : {Rational(1, 3), Rational(2, 7), Rational(0)}) {
        auto strength = PottsStrength::from_w(w);
        auto g = gibbs_measure<Rational>(s, coupling, strength);
        for (int v = 0; v < 3; ++v) {
          auto k = potts_kernel<Rational>(s, v, coupling, strength);
          for (StateId a = 0; a < s->size(); ++a)
            for (StateId b = 0; b < s->size(); ++b) {
              ++pairs;
              t.require(g[a] * k.at(a, b) == g[b] * k.at(b, a), "exact detailed balance");
            }
        }
      }
      for (double J : {0.0, 1.3, 4.0, 10.0}) {
        auto strength = PottsStrength::from_J(J);
        auto g = gibbs_measure<double>(s, coupling, strength);
        for (int v = 0; v < 3; ++v) {
          auto k = potts_kernel<double>(s, v, coupling, strength);
          for (StateId a = 0; a < s->size(); ++a)
            for (StateId b = 0; b < s->size(); ++b) {
              double gap = std::abs(g[a] * k.at(a, b) - g[b] * k.at(b, a));
              worst = std::max(worst, gap);
              t.require(gap <= 1e-12, "float detailed balance within 1e-12");
            }
        }
      }
    }
  }
  std::ostringstream os;
  os << kernels << " kernels fix pi exactly on " << spaces.size() << " spaces; " << pairs
     << " exact balance pairs; worst float gap " << worst;
  t.note(os.str());
  return t.outcome();
}

Outcome criterion_10() {
  Tally t;
  auto s = perms4();
  auto delta = point_measure<Rational>(s, StateId{0});
  auto pi = uniform_measure<Rational>(s);
  SearchConfig cfg;
  cfg.family = parse_family("t(*,4)", *s);
  cfg.max_length = 6;

  auto start = std::chrono::steady_clock::now();
  auto a = search(delta, pi, cfg);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cfg.threads = 1;
  auto b = search(delta, pi, cfg);

  t.require(!a.violations.empty(), "at least one violation");
  bool same = a.violations.size() == b.violations.size() && a.comparisons == b.comparisons;
  for (std::size_t i = 0; same && i < a.violations.size(); ++i)
    same = violation_json(a.violations[i]) == violation_json(b.violations[i]);
  t.require(same, "identical ordered results across worker counts");
  t.require(seconds < 300, "finishes in under five minutes");

  oracle::SymmetricGroup g(4);
  for (const auto& v : a.violations) {
    Rational mu = oracle::tv_to_uniform(oracle::run(g, swaps_of(v.base)));
    Rational nu = oracle::tv_to_uniform(oracle::run(g, swaps_of(with_insertion(v.base, v.insert_at, v.extra))));
    t.require(mu == v.d_mu.value && nu == v.d_nu.value && mu < nu, "violation rechecked by the dense oracle");
  }
  std::ostringstream os;
  os << a.violations.size() << " violations in " << a.comparisons << " comparisons, " << seconds << " s";
  if (!a.violations.empty()) {
    const auto& v = a.violations.front();
    os << "; first: " << to_string(Schedule::from_ops(v.base)) << " + " << to_string(v.extra) << " at "
       << v.insert_at << " (" << v.d_mu.to_string() << " < " << v.d_nu.to_string() << ")";
  }
  t.note(os.str());
  return t.outcome();
}

Outcome criterion_11() {
  Tally t;
  auto s = StateSpace::enumerate(Potts{triangle_graph(), 4});
  auto start = point_measure<double>(s, StateId{0});
  SearchConfig cfg;
  cfg.family = parse_family("p(*;J=2;f)", *s);
  cfg.max_length = 6;
  auto target = stationary_target<double>(s, cfg.family);

  std::string report;
  auto summary = search<double>(start, target, cfg, [&](const Violation<double>& v) {
    report += violation_json(v).dump() + "\n";
  });
  Json tail{{"summary",
             {{"violations", summary.violations.size()},
              {"schedules", summary.schedules},
              {"comparisons", summary.comparisons},
              {"stopped_early", summary.stopped_early}}}};
  report += tail.dump() + "\n";

  std::istringstream lines(report);
  std::string line;
  std::size_t parsed = 0;
  bool well_formed = true;
  while (std::getline(lines, line)) {
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) well_formed = false;
    ++parsed;
  }
  t.require(well_formed, "every report line parses as JSON");
  t.require(parsed == summary.violations.size() + 1, "one line per violation plus a summary");
  t.require(summary.comparisons == count_candidates(cfg.family.size(), cfg.max_length), "search ran to completion");
  t.note(std::to_string(summary.comparisons) + " comparisons, " + std::to_string(summary.violations.size()) +
         " violations (reported, not asserted)");
  return t.outcome();
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"exact marginals 1/4 and 1/8", criterion_1},
      {"sigma(2) uniform under beta", criterion_2},
      {"certified limits and float M=N=20", criterion_3},
      {"strict violation at M=N=1", criterion_4},
      {"coloring run equals permutation run", criterion_5},
      {"block update variant", criterion_6},
      {"alternative insertion example", criterion_7},
      {"antiferromagnetic Potts degeneration", criterion_8},
      {"stationarity and detailed balance", criterion_9},
      {"search finds a violation", criterion_10},
      {"ferromagnetic exploratory search", criterion_11},
  };

  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    long n = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || n < 1 || n > static_cast<long>(criteria.size())) {
      std::cerr << "usage: acceptance [criterion number 1-" << criteria.size() << "]...\n";
      return 2;
    }
    selected.insert(static_cast<std::size_t>(n));
  }
  if (selected.empty())
    for (std::size_t n = 1; n <= criteria.size(); ++n) selected.insert(n);

  bool all = true;
  for (std::size_t n : selected) {
    Outcome o;
    try {
      o = criteria[n - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::cout << (o.passed ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << criteria[n - 1].title << " | "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
