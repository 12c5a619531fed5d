#pragma once

#include "censor/serialize.hpp"

#include <string>
#include <vector>

namespace censor {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Named pass/fail checks plus a JSON payload of computed values.
class Report {
 public:
  explicit Report(std::string name) : name_(std::move(name)) {}

  void check(std::string name, bool passed, std::string detail = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool passed() const;
  const Check* first_failure() const;

  Json& data() noexcept { return data_; }
  const Json& data() const noexcept { return data_; }
  Json to_json() const;

 private:
  std::string name_;
  std::vector<Check> checks_;
  Json data_ = Json::object();
};

// Transport a measure on 4-colorings of the triangle to permutations of 4.
template <class T>
Measure<T> push_forward(const Measure<T>& colorings, const TriangleBijection& bijection);

// delta [t(2,4) t(3,4)]^M t(1,4) t(2,4) [t(1,4) t(3,4)]^N, optionally with
// t(3,4) inserted after the lone t(1,4).
Schedule perm_counterexample_schedule(int M, int N, bool inserted);
// The same with k(i) in place of t(i,4).
Schedule coloring_counterexample_schedule(int M, int N, bool inserted);

struct PermOptions {
  int M = 30;
  int N = 30;
  // Finite-(M,N) checks: tv(mu, pi) at most this...
  double mu_tolerance = 1e-6;
  // ...and tv(nu, pi) at least this.
  double nu_floor = 0.12;
};

Report verify_perm_counterexample(const PermOptions& options, Mode mode);
Report verify_coloring_counterexample(int M, int N, Mode mode);
// The M = N = 1 instance of the permutation construction.
Report verify_mn1(Mode mode, Metric metric = Metric::tv);
Report verify_alternative_example(int M, Mode mode);
Report verify_block_example(Mode mode);

struct PottsSweepRow {
  PottsStrength strength;
  double J = 0;
  Json deviation;  // max row-TV, antiferro site update vs recoloring
  Json epsilon;    // TV after updating vertices 2, 3 from all-1 to the proper sigma(1)=1 slice
  Json d_mu;
  Json d_nu;
  double deviation_value = 0;
  double epsilon_value = 0;
  bool violation = false;
  bool threshold = false;
};

struct PottsOptions {
  // Sorted by increasing J before use.
  std::vector<PottsStrength> grid;
  // Repetitions of the final [p(1) p(3)] block.
  int N = 30;
};

std::vector<PottsStrength> default_J_grid();
std::vector<PottsStrength> default_w_grid();

std::vector<PottsSweepRow> potts_sweep(const PottsOptions& options, Mode mode);
Report verify_potts_antiferro(const PottsOptions& options, Mode mode);

}  // namespace censor
