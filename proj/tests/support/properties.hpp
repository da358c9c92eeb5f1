#ifndef SMEIO_TESTS_PROPERTIES_HPP
#define SMEIO_TESTS_PROPERTIES_HPP

// Property checks shared by the unit tests and the acceptance binary. Each
// returns an empty string on success and a description of the first
// violation otherwise.

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "smeio/smeio.hpp"
#include "support/oracle.hpp"

namespace props {

using namespace smeio;

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

/// Library simulator against the straight-line oracle, period by period.
inline std::string oracle_mismatch(const oracle::Case& c) {
  const auto expected = oracle::simulate(c.problem);
  const auto got = run_episode_with<double>(c.network, c.ouls, c.problem.horizon, oracle::table_demand(c));
  if (got.period_costs.size() != expected.period_cost.size()) return "period count differs";
  for (std::size_t t = 0; t < got.period_costs.size(); ++t) {
    if (!close(got.period_costs[t], expected.period_cost[t], 1e-9)) {
      std::ostringstream os;
      os << "period " << t << ": simulator " << got.period_costs[t] << ", oracle " << expected.period_cost[t];
      return os.str();
    }
  }
  if (!close(got.total_cost, expected.total, 1e-9)) return "total cost differs";
  return "";
}

/// Flow conservation, backorders equal to the negative inventory level, and
/// nonnegativity of stock, orders, shipments and pipelines in every period.
inline std::string invariant_violation(const oracle::Case& c) {
  const Network& net = c.network;
  auto st = init_state<double>(net);
  auto demand = oracle::table_demand(c);
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << what << " at period " << st.t;
    return os.str();
  };
  for (st.t = 0; st.t < c.problem.horizon; ++st.t) {
    const auto before = st;
    step_period<double>(st, net, c.ouls, [&](std::size_t p) { return demand(p, st.t); });
    for (std::size_t p = 0; p < net.node_count(); ++p) {
      const Node& n = net.node_at(p);
      // Finished goods move only by production and demand.
      if (!close(st.il[p], before.il[p] + st.processed[p] - st.demand_total[p], 1e-9)) return fail("inventory balance");
      double owed = n.demand ? st.bo_ext[p] : 0.0;
      double shipped = n.demand ? st.ship_ext[p] : 0.0;
      double owed_before = n.demand ? before.bo_ext[p] : 0.0;
      for (int e : n.out_edges) {
        owed += st.bo[static_cast<std::size_t>(e)];
        owed_before += before.bo[static_cast<std::size_t>(e)];
        shipped += st.ship[static_cast<std::size_t>(e)];
      }
      if (!close(owed, std::max(-st.il[p], 0.0), 1e-9)) return fail("backorders differ from IL^-");
      // Physical stock after shipping = before + production - shipments.
      const double on_hand_before = before.il[p] + owed_before + st.processed[p];
      if (!close(st.il[p] + owed, on_hand_before - shipped, 1e-9)) return fail("physical stock balance");
      if (st.il[p] + owed < -1e-9) return fail("negative physical stock");
      if (shipped < -1e-12) return fail("negative shipment");
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      if (st.order[e] < 0.0 || st.ship[e] < -1e-12 || st.bo[e] < -1e-12 || st.ilr[e] < -1e-12) {
        return fail("negative edge quantity");
      }
      for (double q : st.pipeline[e]) {
        if (q < -1e-12) return fail("negative pipeline");
      }
      // A pipeline gains shipments and loses arrivals.
      const Edge& ed = net.edge_at(e);
      if (!ed.from_source()) {
        const double arrival = before.pipeline[e][static_cast<std::size_t>(st.t % ed.lead_time)];
        if (!close(st.in_transit(e), before.in_transit(e) - arrival + st.ship[e], 1e-9)) return fail("pipeline balance");
      }
    }
  }
  return "";
}

/// A random oracle instance with some linear costs swapped for smooth and
/// piecewise nonlinear forms.
inline Network nonlinear_variant(const Network& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 3.0);
  RawNetwork raw = base.to_raw();
  for (auto& e : raw.edges) {
    switch (rng() % 3) {
      case 0: e.holding = CostExpr::sum({CostExpr::linear(u(rng)), CostExpr::power(0.05 * u(rng), 2)}); break;
      case 1: e.holding = CostExpr::piecewise(4.0, CostExpr::linear(u(rng)), CostExpr::affine(2.0, u(rng))); break;
      default: break;
    }
  }
  // Stockout must agree across the in-edges of a node.
  for (auto& n : raw.nodes) {
    if (rng() % 2 == 0) continue;
    const CostExpr p = CostExpr::sum({CostExpr::linear(4.0 * u(rng)), CostExpr::power(0.1 * u(rng), 2)});
    for (auto& e : raw.edges) {
      if (e.to == n.id) e.stockout = p;
    }
  }
  return Network::validate(raw);
}

struct GradientCheck {
  int instances = 0;
  int checked = 0;
  int skipped = 0;  // components within the kink margin
  double max_rel = 0.0;
  std::string failure;
};

/// Forward-mode gradients against central differences under common random
/// numbers, on random instances with at most three nodes and T <= 10.
inline GradientCheck check_gradients(int instances, std::uint64_t seed, double tol = 1e-5, double margin = 1e-2) {
  std::mt19937_64 rng(seed);
  GradientCheck out;
  for (int k = 0; k < instances; ++k) {
    const oracle::Case c = oracle::random_case(rng, 10);
    const Network net = nonlinear_variant(c.network, rng);
    const int horizon = c.problem.horizon;
    const std::uint64_t stream = 100 + static_cast<std::uint64_t>(k);
    KinkMonitor monitor(c.ouls.size());
    GradResult g;
    {
      KinkMonitorScope scope(monitor);
      RngStream r = substream(stream, 0, 0);
      g = grad_episode(net, c.ouls, horizon, r);
    }
    ++out.instances;
    const double h = 1e-4;
    for (std::size_t e = 0; e < c.ouls.size(); ++e) {
      if (monitor.min_distance()[e] < margin) {
        ++out.skipped;
        continue;
      }
      std::vector<double> up = c.ouls, dn = c.ouls;
      up[e] += h;
      dn[e] -= h;
      RngStream ru = substream(stream, 0, 0), rd = substream(stream, 0, 0);
      const double fd =
          (run_episode(net, up, horizon, ru).total_cost - run_episode(net, dn, horizon, rd).total_cost) / (2 * h);
      const double rel = std::abs(g.gradient[e] - fd) / std::max(std::abs(fd), 1.0);
      out.max_rel = std::max(out.max_rel, rel);
      ++out.checked;
      if (rel > tol && out.failure.empty()) {
        std::ostringstream os;
        os << "instance " << k << " edge " << e << ": forward " << g.gradient[e] << ", central " << fd;
        out.failure = os.str();
      }
    }
  }
  return out;
}

}  // namespace props

#endif  // SMEIO_TESTS_PROPERTIES_HPP
