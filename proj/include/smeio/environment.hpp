#ifndef SMEIO_ENVIRONMENT_HPP
#define SMEIO_ENVIRONMENT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

#include "smeio/gradient.hpp"
#include "smeio/network.hpp"
#include "smeio/simulator.hpp"
#include "smeio/stochastics.hpp"

namespace smeio {

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written by index so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Trial offsets that keep the substreams of different consumers disjoint.
namespace streams {
inline constexpr std::uint64_t evaluation = 0;
inline constexpr std::uint64_t training = 0x1000;
inline constexpr std::uint64_t test = 0x2000;
inline constexpr std::uint64_t dfo = 0x3000;
inline constexpr std::uint64_t random_search = 0x4000;
inline constexpr std::uint64_t random_candidates = 0x5000;
inline constexpr std::uint64_t line_search = 0x6000;
}  // namespace streams

struct PolicyEvaluation {
  double mean = 0.0;  // mean of per-trial average period costs
  double std = 0.0;   // sample standard deviation across trials
  std::vector<double> per_trial;
};

inline PolicyEvaluation summarize(std::vector<double> per_trial) {
  PolicyEvaluation ev;
  const double n = static_cast<double>(per_trial.size());
  if (per_trial.empty()) return ev;
  ev.mean = std::accumulate(per_trial.begin(), per_trial.end(), 0.0) / n;
  if (per_trial.size() > 1) {
    double ss = 0.0;
    for (double v : per_trial) ss += (v - ev.mean) * (v - ev.mean);
    ev.std = std::sqrt(ss / (n - 1.0));
  }
  ev.per_trial = std::move(per_trial);
  return ev;
}

/// Average period cost of one long run after discarding `warmup` periods,
/// without salvage.
inline double steady_state_cost(const Network& net, std::span<const double> ouls, int horizon, int warmup,
                                RngStream& rng, SimOptions opt = {}) {
  opt.salvage = false;
  const auto res = run_episode(net, ouls, warmup + horizon, rng, opt);
  double acc = 0.0;
  for (std::size_t t = static_cast<std::size_t>(warmup); t < res.period_costs.size(); ++t) acc += res.period_costs[t];
  return horizon > 0 ? acc / horizon : 0.0;
}

struct EvalConfig {
  int trials = 10;
  int horizon = 10000;
  std::uint64_t seed = 0;
  int warmup = -1;  // -1: max(longest total lead time, 100)
  std::uint64_t trial_base = streams::evaluation;
  int jobs = 0;
  SimOptions sim{};
};

/// Long-run policy evaluation: `trials` independent runs on substreams
/// (seed, trial_base + trial, 0).
inline PolicyEvaluation evaluate_policy(const Network& net, std::span<const double> ouls, const EvalConfig& cfg) {
  if (ouls.size() != net.edge_count()) throw DimensionMismatch(net.edge_count(), ouls.size());
  const int warmup = cfg.warmup < 0 ? default_warmup(net) : cfg.warmup;
  std::vector<double> per_trial(static_cast<std::size_t>(std::max(cfg.trials, 0)));
  parallel_for(per_trial.size(), cfg.jobs, [&](std::size_t k) {
    RngStream rng = substream(cfg.seed, cfg.trial_base + k, 0);
    per_trial[k] = steady_state_cost(net, ouls, cfg.horizon, warmup, rng, cfg.sim);
  });
  return summarize(std::move(per_trial));
}

inline PolicyEvaluation evaluate_policy(const Network& net, std::span<const double> ouls, int trials, int horizon,
                                        std::uint64_t seed) {
  EvalConfig cfg;
  cfg.trials = trials;
  cfg.horizon = horizon;
  cfg.seed = seed;
  return evaluate_policy(net, ouls, cfg);
}

/// The agent's view of an instance: finite-horizon episodes with salvage,
/// costs reported per period (episode total divided by the horizon), and an
/// exact count of every simulated episode.
class Environment {
 public:
  Environment(Network net, int horizon, std::uint64_t seed, SimOptions opt = {}, int jobs = 0)
      : net_(std::move(net)), horizon_(horizon), seed_(seed), opt_(opt), jobs_(jobs) {
    if (horizon_ <= 0) throw std::invalid_argument("Environment: horizon must be positive");
  }

  const Network& network() const { return net_; }
  int horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }
  int jobs() const { return jobs_; }
  const SimOptions& options() const { return opt_; }
  std::size_t dim() const { return net_.edge_count(); }
  std::uint64_t interactions() const { return interactions_.load(); }

  /// Replaces the initial levels used by subsequent episodes.
  void set_init_levels(const std::vector<double>& levels) { net_ = net_.with_init_levels(levels); }

  double episode_cost(std::span<const double> ouls, std::uint64_t trial, std::uint64_t episode) const {
    RngStream rng = substream(seed_, trial, episode);
    const auto res = run_episode(net_, ouls, horizon_, rng, opt_);
    ++interactions_;
    return res.total_cost / horizon_;
  }

  GradResult episode_gradient(std::span<const double> ouls, std::uint64_t trial, std::uint64_t episode) const {
    RngStream rng = substream(seed_, trial, episode);
    GradResult g = grad_episode(net_, ouls, horizon_, rng, opt_);
    ++interactions_;
    g.cost /= horizon_;
    for (double& d : g.gradient) d /= horizon_;
    return g;
  }

  /// Mean per-period cost over episodes first..first+count-1 of `trial`.
  double mean_cost(std::span<const double> ouls, std::uint64_t trial, std::uint64_t first, int count) const {
    std::vector<double> c(static_cast<std::size_t>(count));
    parallel_for(c.size(), jobs_, [&](std::size_t k) { c[k] = episode_cost(ouls, trial, first + k); });
    return std::accumulate(c.begin(), c.end(), 0.0) / std::max(count, 1);
  }

  /// Mean cost and mean gradient over a batch of episodes.
  GradResult mean_gradient(std::span<const double> ouls, std::uint64_t trial, std::uint64_t first, int count) const {
    std::vector<GradResult> gs(static_cast<std::size_t>(count));
    parallel_for(gs.size(), jobs_, [&](std::size_t k) { gs[k] = episode_gradient(ouls, trial, first + k); });
    GradResult out;
    out.gradient.assign(ouls.size(), 0.0);
    for (const auto& g : gs) {
      out.cost += g.cost;
      for (std::size_t e = 0; e < ouls.size(); ++e) out.gradient[e] += g.gradient[e];
    }
    const double inv = 1.0 / std::max(count, 1);
    out.cost *= inv;
    for (double& d : out.gradient) d *= inv;
    return out;
  }

  /// Steady-state scoring that is charged to the interaction count, one
  /// interaction per trial.
  PolicyEvaluation steady_state(std::span<const double> ouls, int trials, int horizon, std::uint64_t trial_base,
                                int warmup = -1) const {
    EvalConfig cfg;
    cfg.trials = trials;
    cfg.horizon = horizon;
    cfg.seed = seed_;
    cfg.warmup = warmup;
    cfg.trial_base = trial_base;
    cfg.jobs = jobs_;
    cfg.sim = opt_;
    auto ev = evaluate_policy(net_, ouls, cfg);
    interactions_ += static_cast<std::uint64_t>(std::max(trials, 0));
    return ev;
  }

 private:
  Network net_;
  int horizon_;
  std::uint64_t seed_;
  SimOptions opt_;
  int jobs_;
  mutable std::atomic<std::uint64_t> interactions_{0};
};

}  // namespace smeio

#endif  // SMEIO_ENVIRONMENT_HPP
