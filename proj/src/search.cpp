#include "censor/search.hpp"

#include "censor/errors.hpp"

#include <atomic>
#include <limits>
#include <thread>

namespace censor {

std::size_t count_candidates(std::size_t family_size, std::size_t max_length) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  std::size_t bases = 1;
  for (std::size_t len = 0; len <= max_length; ++len) {
    if (len > 0) {
      if (family_size != 0 && bases > kMax / family_size) return kMax;
      bases *= family_size;
    }
    const std::size_t per_base = (len + 1) * family_size;
    if (per_base != 0 && bases > kMax / per_base) return kMax;
    if (total > kMax - bases * per_base) return kMax;
    total += bases * per_base;
  }
  return total;
}

namespace {

template <class T>
struct BaseOutcome {
  std::vector<Violation<T>> violations;
};

template <class T>
class Searcher {
 public:
  Searcher(const Measure<T>& initial, const Measure<T>& target, const SearchConfig& config)
      : initial_(initial), target_(target), config_(config), cache_(initial.space_ptr()) {
    require_same_space(initial, target);
    for (const Op& op : config.family) kernels_.push_back(&cache_.get(op));
  }

  // Evaluates base schedule `code` of length `len`; `first_index` is the
  // rank of its first candidate.
  BaseOutcome<T> evaluate(std::size_t len, std::size_t code, std::size_t first_index) const {
    const std::size_t f = kernels_.size();
    std::vector<std::size_t> digits(len);
    for (std::size_t k = len; k > 0; --k) {
      digits[k - 1] = code % f;
      code /= f;
    }
    std::vector<Measure<T>> prefix{initial_};
    prefix.reserve(len + 1);
    for (std::size_t d : digits) prefix.push_back(apply(prefix.back(), *kernels_[d]));
    const auto d_mu = distance(config_.metric, prefix.back(), target_);

    BaseOutcome<T> out;
    std::size_t index = first_index;
    for (std::size_t t = 0; t <= len; ++t) {
      for (std::size_t e = 0; e < f; ++e, ++index) {
        Measure<T> nu = apply(prefix[t], *kernels_[e]);
        for (std::size_t k = t; k < len; ++k) nu = apply(nu, *kernels_[digits[k]]);
        auto d_nu = distance(config_.metric, nu, target_);
        if (!strictly_closer(d_mu, d_nu)) continue;
        Violation<T> v;
        v.index = index;
        for (std::size_t d : digits) v.base.push_back(config_.family[d]);
        v.insert_at = t;
        v.extra = config_.family[e];
        v.d_mu = d_mu;
        v.d_nu = std::move(d_nu);
        out.violations.push_back(std::move(v));
        if (config_.stop_at_first) return out;
      }
    }
    return out;
  }

 private:
  const Measure<T>& initial_;
  const Measure<T>& target_;
  const SearchConfig& config_;
  KernelCache<T> cache_;
  std::vector<const Kernel<T>*> kernels_;
};

}  // namespace

template <class T>
SearchSummary<T> search(const Measure<T>& initial, const Measure<T>& target, const SearchConfig& config,
                        const std::function<void(const Violation<T>&)>& on_violation) {
  if (config.family.empty()) throw InvalidArgument("search needs a nonempty op family");
  if (config.max_length < 1) throw InvalidArgument("search needs a maximal length of at least 1");
  const std::size_t f = config.family.size();
  const std::size_t total = count_candidates(f, config.max_length);
  if (total > config.max_candidates) {
    throw CapExceeded("search would compare " +
                      (total == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                        : std::to_string(total)) +
                      " candidates, above the cap of " + std::to_string(config.max_candidates));
  }

  const Searcher<T> searcher(initial, target, config);
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());

  SearchSummary<T> summary;
  std::size_t first_index = 0;
  std::size_t bases = 1;
  constexpr std::size_t kChunk = 512;

  for (std::size_t len = 0; len <= config.max_length; ++len) {
    if (len > 0) bases *= f;
    const std::size_t per_base = (len + 1) * f;
    for (std::size_t begin = 0; begin < bases; begin += kChunk) {
      const std::size_t end = std::min(bases, begin + kChunk);
      std::vector<BaseOutcome<T>> slots(end - begin);
      std::atomic<std::size_t> next{begin};
      auto worker = [&] {
        for (std::size_t code; (code = next.fetch_add(1)) < end;) {
          slots[code - begin] = searcher.evaluate(len, code, first_index + code * per_base);
        }
      };
      const unsigned n = std::min<std::size_t>(threads, end - begin);
      if (n <= 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
      }

      for (std::size_t code = begin; code < end; ++code) {
        ++summary.schedules;
        auto& found = slots[code - begin].violations;
        if (config.stop_at_first && !found.empty()) {
          // Comparisons up to and including the first violation.
          summary.comparisons += found.front().index - (first_index + code * per_base) + 1;
          if (on_violation) on_violation(found.front());
          summary.violations.push_back(std::move(found.front()));
          summary.stopped_early = true;
          return summary;
        }
        summary.comparisons += per_base;
        for (auto& v : found) {
          if (on_violation) on_violation(v);
          summary.violations.push_back(std::move(v));
        }
      }
    }
    first_index += bases * per_base;
  }
  return summary;
}

template SearchSummary<Rational> search<Rational>(const Measure<Rational>&, const Measure<Rational>&,
                                                  const SearchConfig&,
                                                  const std::function<void(const Violation<Rational>&)>&);
template SearchSummary<double> search<double>(const Measure<double>&, const Measure<double>&, const SearchConfig&,
                                              const std::function<void(const Violation<double>&)>&);

}  // namespace censor
