#ifndef SMEIO_ADAM_HPP
#define SMEIO_ADAM_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "smeio/environment.hpp"
#include "smeio/network.hpp"
#include "smeio/optimizer_run.hpp"

namespace smeio {

struct AgentConfig {
  double learning_rate = 0.01;
  int batch_size = 5;
  int episodes = 50000;  // training episodes
  int checkpoint_every = 100;
  int test_episodes = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double restart_threshold = 0.01;
  int max_rounds = 5;
  std::optional<std::vector<double>> init;  // starting OULs; default: initial levels per edge

  void check() const {
    if (!(learning_rate > 0.0) || batch_size <= 0 || episodes <= 0 || checkpoint_every <= 0 || test_episodes <= 0 ||
        !(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0) ||
        !(restart_threshold >= 0.0) || max_rounds <= 0) {
      throw std::invalid_argument("AgentConfig: parameters must be positive");
    }
    if (checkpoint_every % batch_size != 0) {
      throw std::invalid_argument("AgentConfig: batch_size must divide checkpoint_every");
    }
  }
};

/// Adam moments for a flat parameter vector.
class AdamState {
 public:
  AdamState(std::size_t n, double lr, double b1, double b2, double eps)
      : m_(n, 0.0), v_(n, 0.0), lr_(lr), b1_(b1), b2_(b2), eps_(eps) {}

  void step(std::vector<double>& theta, const std::vector<double>& grad) {
    ++t_;
    const double c1 = 1.0 - std::pow(b1_, t_);
    const double c2 = 1.0 - std::pow(b2_, t_);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m_[i] = b1_ * m_[i] + (1.0 - b1_) * grad[i];
      v_[i] = b2_ * v_[i] + (1.0 - b2_) * grad[i] * grad[i];
      theta[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
    }
  }

 private:
  std::vector<double> m_, v_;
  double lr_, b1_, b2_, eps_;
  int t_ = 0;
};

/// Starting OUL per decision edge: its init_level when given, otherwise the
/// priming level of the downstream node.
inline std::vector<double> default_start(const Network& net) {
  const auto prime = priming_levels(net);
  std::vector<double> out;
  for (const auto& e : net.edges()) out.push_back(e.init_level.value_or(prime[static_cast<std::size_t>(e.to_pos)]));
  return out;
}

namespace detail {
inline bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}
}  // namespace detail

/// Gradient agent with the OUL vector as its parameters. Training episodes
/// come from trial `streams::training + round`. Every checkpoint of a round
/// is scored on the same held-out test episodes, so checkpoints compare
/// under common random numbers.
inline OptimizerRun optimize_adam(const Environment& env, const AgentConfig& cfg, std::uint64_t round = 0) {
  cfg.check();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  std::vector<double> theta = cfg.init ? *cfg.init : default_start(env.network());
  if (theta.size() != env.dim()) throw DimensionMismatch(env.dim(), theta.size());
  AdamState adam(theta.size(), cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon);
  OptimizerRun run;
  run.method = "adam";
  const std::uint64_t trial = streams::training + round;
  for (int done = 0; done < cfg.episodes;) {
    const int b = std::min(cfg.batch_size, cfg.episodes - done);
    const GradResult g = env.mean_gradient(theta, trial, static_cast<std::uint64_t>(done), b);
    if (!std::isfinite(g.cost) || !detail::all_finite(g.gradient)) throw NonFiniteCost(theta);
    adam.step(theta, g.gradient);
    if (!detail::all_finite(theta)) throw NonFiniteCost(theta);
    done += b;
    if (done % cfg.checkpoint_every == 0 || done == cfg.episodes) {
      const double c = env.mean_cost(theta, streams::test + round, 0, cfg.test_episodes);
      if (!std::isfinite(c)) throw NonFiniteCost(theta);
      run.record(env.interactions() - start, theta, c);
    }
  }
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Repeats training from the best OULs so far, which also become the initial
/// levels of the environment (negative levels start empty), until a round
/// improves by less than `restart_threshold` or `max_rounds` is reached.
inline OptimizerRun restart_loop(const Environment& env, const AgentConfig& cfg) {
  cfg.check();
  const auto t0 = std::chrono::steady_clock::now();
  OptimizerRun total;
  total.method = "adam_restarts";
  Network net = env.network();
  AgentConfig round_cfg = cfg;
  for (int r = 0; r < cfg.max_rounds; ++r) {
    Environment round_env(net, env.horizon(), env.seed(), env.options(), env.jobs());
    const OptimizerRun run = optimize_adam(round_env, round_cfg, static_cast<std::uint64_t>(r));
    for (const auto& c : run.trace) total.trace.push_back(Checkpoint{total.interactions + c.episodes, c.ouls, c.cost});
    total.interactions += run.interactions;
    const double prev = total.best_cost;
    if (run.best_cost < total.best_cost) {
      total.best_cost = run.best_cost;
      total.best_ouls = run.best_ouls;
    }
    total.round_best.push_back(total.best_cost);
    const bool improved_enough = r == 0 || (prev - total.best_cost) >= cfg.restart_threshold * std::abs(prev);
    if (!improved_enough) break;
    std::vector<double> levels = total.best_ouls;
    for (double& v : levels) v = std::max(v, 0.0);
    net = net.with_init_levels(levels);
    round_cfg.init = total.best_ouls;
  }
  total.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return total;
}

}  // namespace smeio

#endif  // SMEIO_ADAM_HPP
