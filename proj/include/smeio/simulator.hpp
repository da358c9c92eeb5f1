#ifndef SMEIO_SIMULATOR_HPP
#define SMEIO_SIMULATOR_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smeio/cost_expr.hpp"
#include "smeio/network.hpp"
#include "smeio/scalar.hpp"
#include "smeio/stochastics.hpp"

namespace smeio {

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : std::invalid_argument("DimensionMismatch: expected " + std::to_string(expected) + " order-up-to levels, got " +
                              std::to_string(got)) {}
};

/// How a node's finished goods enter its inventory position.
enum class PositionRule {
  installation,  // raw material + finished goods (net of backorders) + on order - current demand
  raw_only,      // raw material + on order - current demand
};

enum class InitMode {
  automatic,  // explicit levels where every incoming edge has one, priming elsewhere
  priming,
  explicit_levels,
};

struct SimOptions {
  InitMode init = InitMode::automatic;
  PositionRule position = PositionRule::installation;
  bool allow_negative_orders = false;
  bool salvage = true;
};

/// Complete inventory state of one episode. Node vectors are indexed by
/// ordering position, edge vectors by decision-edge index.
template <Scalar S>
struct SimState {
  int t = 0;
  std::vector<S> il;                     // finished goods, negative when backordered
  std::vector<S> ilr;                    // raw material of `from` held at `to`
  std::vector<std::vector<S>> pipeline;  // ring of length L per edge
  std::vector<S> bo;                     // owed by `from` to `to`
  std::vector<S> bo_ext;                 // owed to the external customer

  // Flows of the current period.
  std::vector<S> order;       // D_ij: order placed by `to` on `from`
  std::vector<S> ship;        // S_ij
  std::vector<S> demand_ext;  // external demand
  std::vector<S> ship_ext;
  std::vector<S> demand_total;  // all demand seen by a node this period
  std::vector<S> processed;     // R_j

  S in_transit(std::size_t e) const {
    S acc(0.0);
    for (const S& q : pipeline[e]) acc += q;
    return acc;
  }
};

/// Finished-goods priming level of every node: throughput times the longest
/// incoming lead time.
inline std::vector<double> priming_levels(const Network& net) {
  std::vector<double> out;
  for (const auto& n : net.nodes()) out.push_back(n.throughput * n.max_in_lead_time);
  return out;
}

/// Starting finished-goods level of every node under `mode`.
inline std::vector<double> initial_levels(const Network& net, InitMode mode) {
  std::vector<double> out = priming_levels(net);
  if (mode == InitMode::priming) return out;
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    const Node& n = net.node_at(p);
    double sum = 0.0;
    bool all = !n.in_edges.empty();
    for (int e : n.in_edges) {
      const auto& lvl = net.edge_at(static_cast<std::size_t>(e)).init_level;
      if (!lvl) {
        all = false;
        break;
      }
      sum += *lvl;
    }
    if (all) {
      out[p] = sum / static_cast<double>(n.in_edges.size());
    } else if (mode == InitMode::explicit_levels) {
      throw std::invalid_argument("explicit initialisation requested but node " + std::to_string(n.id) +
                                  " has an incoming edge without init_level");
    }
  }
  return out;
}

template <Scalar S>
SimState<S> init_state(const Network& net, InitMode mode = InitMode::automatic) {
  const std::size_t nn = net.node_count();
  const std::size_t ne = net.edge_count();
  SimState<S> st;
  st.il.assign(nn, S(0.0));
  const auto levels = initial_levels(net, mode);
  for (std::size_t p = 0; p < nn; ++p) st.il[p] = S(levels[p]);
  st.ilr.assign(ne, S(0.0));
  st.bo.assign(ne, S(0.0));
  st.order.assign(ne, S(0.0));
  st.ship.assign(ne, S(0.0));
  st.pipeline.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    st.pipeline[e].assign(static_cast<std::size_t>(net.edge_at(e).lead_time), S(0.0));
  }
  st.bo_ext.assign(nn, S(0.0));
  st.demand_ext.assign(nn, S(0.0));
  st.ship_ext.assign(nn, S(0.0));
  st.demand_total.assign(nn, S(0.0));
  st.processed.assign(nn, S(0.0));
  return st;
}

/// Demand observation and ordering, downstream to upstream.
///
/// `demand(node_position)` is called once per external-demand node per period,
/// in descending ordering position.
template <Scalar S, class DemandFn>
void place_orders(SimState<S>& st, const Network& net, std::span<const S> ouls, DemandFn&& demand,
                  const SimOptions& opt = {}) {
  if (ouls.size() != net.edge_count()) throw DimensionMismatch(net.edge_count(), ouls.size());
  for (std::size_t p = net.node_count(); p-- > 0;) {
    const Node& n = net.node_at(p);
    S total(0.0);
    if (n.demand) {
      st.demand_ext[p] = S(demand(p));
      total = st.demand_ext[p];
    } else {
      for (int e : n.out_edges) total += st.order[static_cast<std::size_t>(e)];
    }
    st.demand_total[p] = total;
    for (int ei : n.in_edges) {
      const auto e = static_cast<std::size_t>(ei);
      S ip = st.ilr[e] - total + st.in_transit(e) + st.bo[e];
      if (opt.position == PositionRule::installation) ip += st.il[p];
      const S q = ouls[e] - ip;
      st.order[e] = opt.allow_negative_orders ? q : pos(q);
    }
  }
}

/// Pipeline arrivals, source shipments, then conversion of raw material into
/// finished goods (minimum over inputs for assembly-and, sum otherwise).
template <Scalar S>
void receive_and_process(SimState<S>& st, const Network& net) {
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge_at(e);
    if (ed.lead_time == 0) {
      st.ilr[e] += st.order[e];
      st.ship[e] = st.order[e];
      continue;
    }
    const auto slot = static_cast<std::size_t>(st.t % ed.lead_time);
    st.ilr[e] += st.pipeline[e][slot];
    st.pipeline[e][slot] = S(0.0);
    if (ed.from_source()) {
      st.pipeline[e][slot] = st.order[e];
      st.ship[e] = st.order[e];
    }
  }
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    const Node& n = net.node_at(p);
    S r(0.0);
    if (n.kind == NodeKind::assembly_and) {
      r = st.ilr[static_cast<std::size_t>(n.in_edges.front())];
      for (std::size_t a = 1; a < n.in_edges.size(); ++a) r = smin(r, st.ilr[static_cast<std::size_t>(n.in_edges[a])]);
      for (int e : n.in_edges) st.ilr[static_cast<std::size_t>(e)] -= r;
    } else {
      for (int e : n.in_edges) {
        r += st.ilr[static_cast<std::size_t>(e)];
        st.ilr[static_cast<std::size_t>(e)] = S(0.0);
      }
    }
    st.processed[p] = r;
    st.il[p] += r;
  }
}

/// Shipping, upstream to downstream. Each customer is owed its current
/// demand plus its earlier backorders; a shortfall is split in proportion to
/// what each customer is owed.
template <Scalar S>
void allocate_and_ship(SimState<S>& st, const Network& net) {
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    const Node& n = net.node_at(p);
    if (n.demand) {
      const S owed = st.demand_ext[p] + st.bo_ext[p];
      const S on_hand = st.il[p] + st.bo_ext[p];
      if (branch_ge(on_hand, owed)) {
        st.ship_ext[p] = owed;
        st.bo_ext[p] = S(0.0);
      } else {
        st.ship_ext[p] = on_hand;
        st.bo_ext[p] = owed - on_hand;
      }
      st.il[p] -= st.demand_ext[p];
      continue;
    }
    S total_owed(0.0);
    S on_hand = st.il[p];
    for (int ei : n.out_edges) {
      const auto e = static_cast<std::size_t>(ei);
      total_owed += st.order[e] + st.bo[e];
      on_hand += st.bo[e];
    }
    const bool enough = branch_ge(on_hand, total_owed);
    for (int ei : n.out_edges) {
      const auto e = static_cast<std::size_t>(ei);
      const S owed = st.order[e] + st.bo[e];
      if (enough) {
        st.ship[e] = owed;
        st.bo[e] = S(0.0);
      } else {
        st.ship[e] = on_hand * owed / total_owed;
        st.bo[e] = owed - st.ship[e];
      }
      const Edge& ed = net.edge_at(e);
      st.pipeline[e][static_cast<std::size_t>(st.t % ed.lead_time)] = st.ship[e];
    }
    st.il[p] -= st.demand_total[p];
  }
}

/// Holding plus stockout cost of the end-of-period state.
template <Scalar S>
S period_cost(const SimState<S>& st, const Network& net) {
  S c(0.0);
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    const Node& n = net.node_at(p);
    S downstream = pos(st.il[p]);
    for (int e : n.out_edges) downstream += st.in_transit(static_cast<std::size_t>(e));
    for (int ei : n.in_edges) {
      const auto e = static_cast<std::size_t>(ei);
      c += net.edge_at(e).holding(S(st.ilr[e] + downstream));
    }
    if (n.demand) {
      c += n.stockout(st.bo_ext[p]);
    } else {
      for (int e : n.out_edges) c += n.stockout(st.bo[static_cast<std::size_t>(e)]);
    }
  }
  return c;
}

/// Negated salvage reward of the ending finished-goods levels.
template <Scalar S>
S salvage_cost(const SimState<S>& st, const Network& net) {
  S c(0.0);
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    const Node& n = net.node_at(p);
    if (n.salvage) c -= (*n.salvage)(st.il[p]);
  }
  return c;
}

struct TraceRow {
  int period = 0;
  std::string link;  // "i->j", or "j->customer" for external demand
  double il = 0, ilr = 0, it = 0, bo = 0, s = 0, d = 0, c_t = 0;
};

template <Scalar S>
void append_trace(std::vector<TraceRow>& rows, const SimState<S>& st, const Network& net, double c_t) {
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge_at(e);
    rows.push_back(TraceRow{st.t, std::to_string(ed.from) + "->" + std::to_string(ed.to),
                            value_of(st.il[static_cast<std::size_t>(ed.to_pos)]), value_of(st.ilr[e]),
                            value_of(st.in_transit(e)), value_of(st.bo[e]), value_of(st.ship[e]),
                            value_of(st.order[e]), c_t});
  }
  for (std::size_t p = 0; p < net.node_count(); ++p) {
    if (!net.node_at(p).demand) continue;
    rows.push_back(TraceRow{st.t, std::to_string(net.node_at(p).id) + "->customer", value_of(st.il[p]), 0.0, 0.0,
                            value_of(st.bo_ext[p]), value_of(st.ship_ext[p]), value_of(st.demand_ext[p]), c_t});
  }
}

inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "period,edge,IL,ILr,IT,BO,S,D,c_t\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.period << ',' << r.link << ',' << r.il << ',' << r.ilr << ',' << r.it << ',' << r.bo << ',' << r.s
       << ',' << r.d << ',' << r.c_t << '\n';
  }
}

/// One period: orders, receipts and processing, shipping, cost.
template <Scalar S, class DemandFn>
S step_period(SimState<S>& st, const Network& net, std::span<const S> ouls, DemandFn&& demand,
              const SimOptions& opt = {}) {
  place_orders(st, net, ouls, demand, opt);
  receive_and_process(st, net);
  allocate_and_ship(st, net);
  const S c = period_cost(st, net);
  return c;
}

template <Scalar S>
struct EpisodeResult {
  S total_cost{0.0};
  std::vector<double> period_costs;
  double salvage = 0.0;  // cost contribution of salvage (negated reward)
};

/// Runs `horizon` periods with demand supplied by `demand(position, t)`.
template <Scalar S, class DemandFn>
EpisodeResult<S> run_episode_with(const Network& net, std::span<const S> ouls, int horizon, DemandFn&& demand,
                                  const SimOptions& opt = {}, std::vector<TraceRow>* trace = nullptr) {
  if (ouls.size() != net.edge_count()) throw DimensionMismatch(net.edge_count(), ouls.size());
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  SimState<S> st = init_state<S>(net, opt.init);
  EpisodeResult<S> res;
  res.period_costs.reserve(static_cast<std::size_t>(horizon));
  for (st.t = 0; st.t < horizon; ++st.t) {
    const S c = step_period(st, net, ouls, [&](std::size_t p) { return demand(p, st.t); }, opt);
    res.total_cost += c;
    res.period_costs.push_back(value_of(c));
    if (trace) append_trace(*trace, st, net, value_of(c));
  }
  if (opt.salvage) {
    const S sv = salvage_cost(st, net);
    res.salvage = value_of(sv);
    res.total_cost += sv;
  }
  return res;
}

/// Demand drawn from `rng`: one draw per external-demand node per period.
template <Scalar S>
EpisodeResult<S> run_episode(const Network& net, std::span<const S> ouls, int horizon, RngStream& rng,
                             const SimOptions& opt = {}, std::vector<TraceRow>* trace = nullptr) {
  return run_episode_with<S>(
      net, ouls, horizon, [&](std::size_t p, int) { return sample(*net.node_at(p).demand, rng); }, opt, trace);
}

inline EpisodeResult<double> run_episode(const Network& net, std::span<const double> ouls, int horizon,
                                         RngStream& rng, const SimOptions& opt = {},
                                         std::vector<TraceRow>* trace = nullptr) {
  return run_episode<double>(net, ouls, horizon, rng, opt, trace);
}

inline int default_warmup(const Network& net) { return std::max(net.max_total_lead_time(), 100); }

}  // namespace smeio

#endif  // SMEIO_SIMULATOR_HPP
