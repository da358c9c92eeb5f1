#ifndef SMEIO_GRADIENT_HPP
#define SMEIO_GRADIENT_HPP

#include <span>
#include <vector>

#include "smeio/network.hpp"
#include "smeio/scalar.hpp"
#include "smeio/simulator.hpp"

namespace smeio {

template <std::size_t Cap>
std::vector<Dual<Cap>> seed_ouls(std::span<const double> ouls) {
  std::vector<Dual<Cap>> out;
  out.reserve(ouls.size());
  for (std::size_t e = 0; e < ouls.size(); ++e) out.push_back(Dual<Cap>::variable(ouls[e], e, ouls.size()));
  return out;
}

struct GradResult {
  double cost = 0.0;
  std::vector<double> gradient;
};

/// Episode cost and its derivative with respect to every order-up-to level.
/// The demand stream is consumed exactly as in the plain run.
template <class DemandFn>
GradResult grad_episode_with(const Network& net, std::span<const double> ouls, int horizon, DemandFn&& demand,
                             const SimOptions& opt = {}) {
  if (ouls.size() != net.edge_count()) throw DimensionMismatch(net.edge_count(), ouls.size());
  return with_dual_capacity(ouls.size(), [&]<std::size_t Cap>() {
    const auto x = seed_ouls<Cap>(ouls);
    const auto res = run_episode_with<Dual<Cap>>(net, std::span<const Dual<Cap>>(x), horizon, demand, opt);
    GradResult g;
    g.cost = res.total_cost.value();
    g.gradient.resize(ouls.size());
    for (std::size_t e = 0; e < ouls.size(); ++e) g.gradient[e] = res.total_cost.tangent(e);
    return g;
  });
}

inline GradResult grad_episode(const Network& net, std::span<const double> ouls, int horizon, RngStream& rng,
                               const SimOptions& opt = {}) {
  return grad_episode_with(
      net, ouls, horizon, [&](std::size_t p, int) { return sample(*net.node_at(p).demand, rng); }, opt);
}

}  // namespace smeio

#endif  // SMEIO_GRADIENT_HPP
