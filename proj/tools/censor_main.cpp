// censor: exact insertion experiments for heat-bath dynamics.
//
// Exit codes: 0 success, 1 failed assertion, 2 usage or parse error,
// 3 resource cap exceeded.

#include "censor/errors.hpp"
#include "censor/search.hpp"
#include "censor/serialize.hpp"
#include "censor/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace censor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct GlobalOptions {
  std::string mode = "exact";
  std::string metric = "tv";
  std::string out;
  std::string format;
  std::size_t max_states = kDefaultStateCap;
  unsigned threads = 0;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// "identity", "all:<spin>", or an explicit 1-based assignment "1,2,3".
StateId parse_initial(const std::string& text, const StateSpace& space) {
  if (text.empty()) {
    if (space.empty()) throw InvalidArgument("space " + space.spec() + " has no states");
    return 0;
  }
  std::vector<int> state;
  if (text == "identity") {
    if (!space.is_permutations()) throw InvalidArgument("'identity' needs a permutation space");
    for (int k = 0; k < space.width(); ++k) state.push_back(k);
  } else if (text.rfind("all:", 0) == 0) {
    int spin = std::stoi(text.substr(4));
    state.assign(static_cast<std::size_t>(space.width()), spin - 1);
  } else {
    for (const auto& part : split(text, ',')) state.push_back(std::stoi(part) - 1);
  }
  return space.index_of(state);
}

template <class T>
Measure<T> initial_measure(const SpacePtr& space, const std::string& initial, const std::string& measure_file) {
  if (!measure_file.empty()) {
    std::ifstream in(measure_file);
    if (!in) throw InvalidArgument("cannot open measure file '" + measure_file + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed measure file: ") + e.what());
    }
    auto any = measure_from_json(j);
    auto* m = std::get_if<Measure<T>>(&any);
    if (!m) throw InvalidArgument("measure file mode does not match --mode");
    if (!Measure<T>::same_space(m->space(), *space)) throw InvalidArgument("measure file lives on " + m->space().spec());
    return Measure<T>(space, std::vector<T>(m->weights().begin(), m->weights().end()));
  }
  return point_measure<T>(space, parse_initial(initial, *space));
}

template <class F>
auto with_mode(const GlobalOptions& g, F&& f) {
  if (parse_mode(g.mode) == Mode::exact) return f(Rational{});
  return f(double{});
}

void print_summary(const Report& r) {
  if (const Check* fail = r.first_failure()) {
    std::cerr << "FAIL " << r.name() << ": " << fail->name;
    if (!fail->detail.empty()) std::cerr << " (" << fail->detail << ")";
    std::cerr << "\n";
  } else {
    std::cerr << "PASS " << r.name() << " (" << r.checks().size() << " checks)";
    if (r.data().contains("d_mu")) {
      std::cerr << " d_mu=" << r.data()["d_mu"].dump() << " d_nu=" << r.data()["d_nu"].dump();
    }
    std::cerr << "\n";
  }
}

std::vector<PottsStrength> parse_grid(const std::string& j_values, const std::string& w_values, Mode mode) {
  std::vector<PottsStrength> grid;
  for (const auto& item : split(j_values, ',')) grid.push_back(PottsStrength::from_J(std::stod(item)));
  for (const auto& item : split(w_values, ',')) grid.push_back(PottsStrength::from_w(parse_rational(item)));
  if (!grid.empty()) return grid;
  return mode == Mode::exact ? default_w_grid() : default_J_grid();
}

void write_sweep_csv(std::ostream& out, const std::vector<PottsSweepRow>& rows) {
  auto cell = [](const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
  out << "strength,J,deviation,epsilon,d_mu,d_nu,violation,threshold\n";
  for (const auto& r : rows) {
    out << r.strength.to_string() << "," << format_double(r.J) << "," << cell(r.deviation) << ","
        << cell(r.epsilon) << "," << cell(r.d_mu) << "," << cell(r.d_nu) << "," << (r.violation ? 1 : 0) << ","
        << (r.threshold ? 1 : 0) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact insertion experiments for heat-bath dynamics on colorings, permutations and Potts spins"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--mode", g.mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--metric", g.metric, "tv|l2")->check(CLI::IsMember({"tv", "l2"}));
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-states", g.max_states, "State-space size cap");
  app.add_option("--threads", g.threads, "Search worker threads (0 = all cores)");

  // verify
  auto* verify = app.add_subcommand("verify", "Reproduce the counterexample claims");
  std::string which = "all";
  std::optional<int> opt_m, opt_n;
  std::string grid_j, grid_w;
  int potts_n = PottsOptions{}.N;
  double tol = PermOptions{}.mu_tolerance;
  verify->add_option("--which", which)
      ->check(CLI::IsMember({"all", "perm", "coloring", "mn1", "alternative", "block", "potts"}));
  verify->add_option("--M", opt_m, "Repetitions of the leading block");
  verify->add_option("--N", opt_n, "Repetitions of the trailing block");
  verify->add_option("--grid", grid_j, "Comma-separated J values (float mode)");
  verify->add_option("--w", grid_w, "Comma-separated w = e^{-J} values");
  verify->add_option("--potts-N", potts_n, "Trailing block repetitions in the Potts sweep");
  verify->add_option("--tol", tol, "Bound on tv(mu, pi) in the perm check");

  // evolve
  auto* evolve = app.add_subcommand("evolve", "Evolve a point mass through a schedule");
  std::string space_spec, schedule_text, initial, initial_file;
  evolve->add_option("--space", space_spec)->required();
  evolve->add_option("--schedule", schedule_text)->required();
  evolve->add_option("--initial", initial, "identity | all:<spin> | explicit assignment like 1,2,3");
  evolve->add_option("--initial-measure", initial_file, "Start from a measure JSON file");

  // compare
  auto* compare = app.add_subcommand("compare", "Compare a schedule with and without an inserted update");
  std::size_t at = 0;
  std::string extra;
  compare->add_option("--space", space_spec)->required();
  compare->add_option("--schedule", schedule_text)->required();
  compare->add_option("--at", at, "Insert after this many flattened ops")->required();
  compare->add_option("--extra", extra, "The inserted op")->required();
  compare->add_option("--initial", initial);
  compare->add_option("--initial-measure", initial_file);

  // search
  auto* search_cmd = app.add_subcommand("search", "Exhaustive search for insertion violations");
  std::string family;
  SearchConfig config;
  search_cmd->add_option("--space", space_spec)->required();
  search_cmd->add_option("--family", family, "Op family, e.g. \"t(*,4)\"")->required();
  search_cmd->add_option("--max-len", config.max_length, "Maximal base schedule length");
  search_cmd->add_option("--initial", initial);
  search_cmd->add_flag("--stop-at-first", config.stop_at_first);
  search_cmd->add_option("--max-candidates", config.max_candidates);

  // potts-sweep
  auto* sweep_cmd = app.add_subcommand("potts-sweep", "Antiferromagnetic Potts sweep over coupling strengths");
  sweep_cmd->add_option("--grid", grid_j, "Comma-separated J values (float mode)");
  sweep_cmd->add_option("--w", grid_w, "Comma-separated w = e^{-J} values");
  sweep_cmd->add_option("--N", potts_n, "Trailing block repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Mode mode = parse_mode(g.mode);
    const Metric metric = parse_metric(g.metric);

    if (*verify) {
      std::vector<Report> reports;
      auto want = [&](std::string_view w) { return which == "all" || which == w; };
      if (want("perm")) {
        PermOptions p;
        p.M = opt_m.value_or(p.M);
        p.N = opt_n.value_or(p.N);
        p.mu_tolerance = tol;
        reports.push_back(verify_perm_counterexample(p, mode));
      }
      if (want("coloring")) reports.push_back(verify_coloring_counterexample(opt_m.value_or(1), opt_n.value_or(1), mode));
      if (want("mn1")) reports.push_back(verify_mn1(mode, metric));
      if (want("alternative")) reports.push_back(verify_alternative_example(opt_m.value_or(1), mode));
      if (want("block")) reports.push_back(verify_block_example(mode));
      if (want("potts")) {
        PottsOptions p{parse_grid(grid_j, grid_w, mode), potts_n};
        reports.push_back(verify_potts_antiferro(p, mode));
      }
      Json all = Json::array();
      bool ok = true;
      for (const auto& r : reports) {
        print_summary(r);
        ok = ok && r.passed();
        all.push_back(r.to_json());
      }
      Output out(g.out);
      out.stream() << dump(reports.size() == 1 ? all[0] : all);
      return ok ? kExitOk : kExitAssertion;
    }

    if (*evolve) {
      auto space = parse_space_spec(space_spec, g.max_states);
      const Schedule schedule = parse_schedule(schedule_text);
      return with_mode(g, [&](auto tag) {
        using T = decltype(tag);
        auto m = apply_schedule(initial_measure<T>(space, initial, initial_file), schedule);
        Output out(g.out);
        if (g.format == "csv") {
          out.stream() << "state,p\n";
          for (StateId s = 0; s < m.size(); ++s) {
            if (ScalarTraits<T>::is_zero(m.weights()[s])) continue;
            std::string label;
            for (int x : to_external(space->state(s))) label += (label.empty() ? "" : " ") + std::to_string(x);
            out.stream() << label << "," << ScalarTraits<T>::to_string(m.weights()[s]) << "\n";
          }
        } else {
          out.stream() << dump(measure_json(m));
        }
        auto ops = schedule.flatten();
        try {
          auto target = stationary_target<T>(space, ops);
          std::cerr << "tv to stationary: " << distance(Metric::tv, m, target).to_string() << "\n";
        } catch (const InvalidArgument& e) {
          std::cerr << "tv to stationary: n/a (" << e.what() << ")\n";
        }
        return kExitOk;
      });
    }

    if (*compare) {
      auto space = parse_space_spec(space_spec, g.max_states);
      const Schedule schedule = parse_schedule(schedule_text);
      const Op extra_op = parse_op(extra);
      return with_mode(g, [&](auto tag) {
        using T = decltype(tag);
        InsertionExperiment<T> e{initial_measure<T>(space, initial, initial_file), schedule, at, extra_op, metric,
                                 std::nullopt};
        auto r = compare_insertion(e);
        Json statistics = Json::object();
        if (space->is_permutations() && space->width() >= 2) {
          auto pred = [](std::span<const int> s) { return s[1] == 0; };
          statistics["P_mu(sigma(2)=1)"] = scalar_json(event_probability(r.mu, pred));
          statistics["P_nu(sigma(2)=1)"] = scalar_json(event_probability(r.nu, pred));
        }
        Json report{{"experiment",
                     Json{{"space", space->spec()},
                          {"initial", !initial_file.empty() ? initial_file
                                      : initial.empty()      ? std::string("default")
                                                             : initial},
                          {"schedule", to_string(schedule)},
                          {"insert_at", at},
                          {"extra", to_string(extra_op)},
                          {"schedule_with_insertion",
                           to_string(Schedule::from_ops(with_insertion(schedule.flatten(), at, extra_op)))}}},
                    {"mode", to_string(ScalarTraits<T>::mode)},
                    {"metric", to_string(metric)},
                    {"d_mu", distance_json(r.d_mu)},
                    {"d_nu", distance_json(r.d_nu)},
                    {"violation", r.violation},
                    {"statistics", statistics},
                    {"certificates", Json::array()}};
        Output out(g.out);
        if (g.format == "csv") {
          out.stream() << "d_mu,d_nu,violation\n"
                       << r.d_mu.to_string() << "," << r.d_nu.to_string() << "," << (r.violation ? 1 : 0) << "\n";
        } else {
          out.stream() << dump(report);
        }
        std::cerr << "d_mu=" << r.d_mu.to_string() << " d_nu=" << r.d_nu.to_string()
                  << " violation=" << (r.violation ? "true" : "false") << "\n";
        return kExitOk;
      });
    }

    if (*search_cmd) {
      auto space = parse_space_spec(space_spec, g.max_states);
      config.family = parse_family(family, *space);
      config.metric = metric;
      config.threads = g.threads;
      return with_mode(g, [&](auto tag) {
        using T = decltype(tag);
        auto start = point_measure<T>(space, parse_initial(initial, *space));
        auto target = stationary_target<T>(space, config.family);
        Output out(g.out);
        const auto t0 = std::chrono::steady_clock::now();
        auto summary = search<T>(start, target, config, [&](const Violation<T>& v) {
          out.stream() << violation_json(v).dump() << "\n" << std::flush;
        });
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        Json family_text = Json::array();
        for (const Op& op : config.family) family_text.push_back(to_string(op));
        Json tail{{"summary",
                   Json{{"space", space->spec()},
                        {"family", family_text},
                        {"initial", to_external(start.space().state(parse_initial(initial, *space)))},
                        {"max_len", config.max_length},
                        {"mode", to_string(ScalarTraits<T>::mode)},
                        {"metric", to_string(metric)},
                        {"schedules", summary.schedules},
                        {"comparisons", summary.comparisons},
                        {"violations", summary.violations.size()},
                        {"stopped_early", summary.stopped_early},
                        {"runtime_ms", ms}}}};
        out.stream() << tail.dump() << "\n";
        std::cerr << summary.violations.size() << " violations in " << summary.comparisons << " comparisons ("
                  << ms << " ms)\n";
        return kExitOk;
      });
    }

    if (*sweep_cmd) {
      PottsOptions p{parse_grid(grid_j, grid_w, mode), potts_n};
      auto rows = potts_sweep(p, mode);
      Output out(g.out);
      if (g.format == "json") {
        Json table = Json::array();
        for (const auto& r : rows) {
          table.push_back(Json{{"strength", r.strength.to_string()},
                               {"deviation", r.deviation},
                               {"epsilon", r.epsilon},
                               {"d_mu", r.d_mu},
                               {"d_nu", r.d_nu},
                               {"violation", r.violation},
                               {"threshold", r.threshold}});
        }
        out.stream() << dump(table);
      } else {
        write_sweep_csv(out.stream(), rows);
      }
      return kExitOk;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // std::stoi / std::stod on malformed flags.
    std::cerr << "error: malformed argument (" << e.what() << ")\n";
    return kExitUsage;
  }
  return kExitOk;
}
