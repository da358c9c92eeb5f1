#ifndef SMEIO_RANDOM_SEARCH_HPP
#define SMEIO_RANDOM_SEARCH_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smeio/adam.hpp"
#include "smeio/environment.hpp"
#include "smeio/instance.hpp"
#include "smeio/optimizer_run.hpp"

namespace smeio {

/// Fallback candidate scheme when an instance carries none: base at the
/// starting levels, sigma a quarter of the base plus one.
inline RandomSearchSpec default_random_spec(const Network& net) {
  RandomSearchSpec spec;
  spec.base = default_start(net);
  for (double b : spec.base) spec.sigma.push_back(0.25 * std::abs(b) + 1.0);
  return spec;
}

/// Candidate k of a random search: base + |N(0, sigma)| per edge.
inline std::vector<double> random_candidate(const RandomSearchSpec& spec, std::uint64_t seed, std::uint64_t k) {
  RngStream rng = substream(seed, streams::random_candidates, k);
  std::vector<double> x(spec.base.size());
  for (std::size_t e = 0; e < x.size(); ++e) x[e] = spec.base[e] + std::abs(spec.sigma[e] * rng.standard_normal());
  return x;
}

/// Scores `candidates` random OUL vectors, each on the same `episodes_per`
/// episodes, and keeps the best.
inline OptimizerRun optimize_random_search(const Environment& env, const RandomSearchSpec& spec, int candidates,
                                           int episodes_per) {
  if (spec.base.size() != env.dim() || spec.sigma.size() != env.dim()) {
    throw DimensionMismatch(env.dim(), spec.base.size());
  }
  if (candidates <= 0 || episodes_per <= 0) throw std::invalid_argument("random search: counts must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  OptimizerRun run;
  run.method = "random_search";
  for (int k = 0; k < candidates; ++k) {
    auto x = random_candidate(spec, env.seed(), static_cast<std::uint64_t>(k));
    const double c = env.mean_cost(x, streams::random_search, 0, episodes_per);
    run.record(env.interactions() - start, std::move(x), c);
  }
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace smeio

#endif  // SMEIO_RANDOM_SEARCH_HPP
