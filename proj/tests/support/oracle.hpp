#ifndef SMEIO_TESTS_ORACLE_HPP
#define SMEIO_TESTS_ORACLE_HPP

// Straight-line reference simulator for small instances. It shares no code
// with the library simulator: nodes and edges are keyed by id, pipelines are
// queues, and only linear cost coefficients are supported.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "smeio/smeio.hpp"

namespace oracle {

struct Link {
  int from, to, lead;
  double h;                 // holding coefficient
  double oul;
  double init = -1.0;       // < 0: none
};

struct Site {
  int id;
  smeio::NodeKind kind;
  double mean = 0.0;        // mean external demand, 0 for internal nodes
  double penalty = 0.0;     // stockout coefficient on everything this node owes
  double salvage = 0.0;     // linear salvage reward coefficient
};

struct Problem {
  std::vector<Site> sites;
  std::vector<Link> links;
  std::map<int, std::vector<double>> demand;  // node id -> per-period demand
  int horizon = 1;
};

struct Outcome {
  std::vector<double> period_cost;
  double total = 0.0;
};

inline Outcome simulate(const Problem& pb) {
  using Key = std::pair<int, int>;
  std::map<int, const Site*> site;
  for (const auto& s : pb.sites) site[s.id] = &s;
  std::map<int, std::vector<const Link*>> in, out;
  for (const auto& l : pb.links) {
    in[l.to].push_back(&l);
    if (l.from != 0) out[l.from].push_back(&l);
  }

  // Longest path from the source, for a topological order.
  std::map<int, int> depth;
  std::function<int(int)> depth_of = [&](int id) {
    if (id == 0) return 0;
    if (depth.count(id)) return depth[id];
    int d = 0;
    for (const Link* l : in[id]) d = std::max(d, 1 + depth_of(l->from));
    return depth[id] = d;
  };
  std::vector<int> topo;
  for (const auto& s : pb.sites) topo.push_back(s.id);
  std::sort(topo.begin(), topo.end(), [&](int a, int b) { return std::make_pair(depth_of(a), a) < std::make_pair(depth_of(b), b); });

  std::function<double(int)> flow = [&](int id) {
    if (out[id].empty()) return site[id]->mean;
    double t = 0.0;
    for (const Link* l : out[id]) t += flow(l->to);
    return t;
  };

  std::map<int, double> il, bo_ext;
  std::map<Key, double> ilr, bo, order;
  std::map<Key, std::deque<double>> pipe;
  for (int id : topo) {
    bool all = true;
    double sum = 0.0;
    int max_lead = 0;
    for (const Link* l : in[id]) {
      all = all && l->init >= 0.0;
      sum += l->init;
      max_lead = std::max(max_lead, l->lead);
    }
    il[id] = all ? sum / static_cast<double>(in[id].size()) : flow(id) * max_lead;
    bo_ext[id] = 0.0;
  }
  for (const auto& l : pb.links) {
    const Key k{l.from, l.to};
    ilr[k] = bo[k] = order[k] = 0.0;
    pipe[k] = std::deque<double>(static_cast<std::size_t>(l.lead), 0.0);
  }
  auto sum_of = [](const std::deque<double>& q) {
    double s = 0.0;
    for (double v : q) s += v;
    return s;
  };

  Outcome res;
  for (int t = 0; t < pb.horizon; ++t) {
    std::map<int, double> dem;
    // Orders, customers first.
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int j = *it;
      double d = 0.0;
      if (out[j].empty()) {
        d = pb.demand.at(j)[static_cast<std::size_t>(t)];
      } else {
        for (const Link* l : out[j]) d += order[{j, l->to}];
      }
      dem[j] = d;
      for (const Link* l : in[j]) {
        const Key k{l->from, j};
        const double ip = ilr[k] + il[j] - d + sum_of(pipe[k]) + bo[k];
        order[k] = std::max(0.0, l->oul - ip);
      }
    }
    // Arrivals and source shipments.
    for (const auto& l : pb.links) {
      const Key k{l.from, l.to};
      if (l.lead == 0) {
        ilr[k] += order[k];
        continue;
      }
      ilr[k] += pipe[k].front();
      pipe[k].pop_front();
      if (l.from == 0) pipe[k].push_back(order[k]);
    }
    // Production.
    for (int j : topo) {
      double made = 0.0;
      if (site[j]->kind == smeio::NodeKind::assembly_and) {
        made = ilr[{in[j][0]->from, j}];
        for (const Link* l : in[j]) made = std::min(made, ilr[{l->from, j}]);
        for (const Link* l : in[j]) ilr[{l->from, j}] -= made;
      } else {
        for (const Link* l : in[j]) {
          made += ilr[{l->from, j}];
          ilr[{l->from, j}] = 0.0;
        }
      }
      il[j] += made;
    }
    // Shipping.
    for (int j : topo) {
      if (out[j].empty()) {
        const double owed = dem[j] + bo_ext[j];
        const double have = il[j] + bo_ext[j];
        bo_ext[j] = have >= owed ? 0.0 : owed - have;
        il[j] -= dem[j];
        continue;
      }
      double owed_total = 0.0, have = il[j];
      for (const Link* l : out[j]) {
        owed_total += order[{j, l->to}] + bo[{j, l->to}];
        have += bo[{j, l->to}];
      }
      for (const Link* l : out[j]) {
        const Key k{j, l->to};
        const double owed = order[k] + bo[k];
        const double sent = have >= owed_total ? owed : have * owed / owed_total;
        bo[k] = owed - sent;
        pipe[k].push_back(sent);
      }
      il[j] -= dem[j];
    }
    // Cost.
    double c = 0.0;
    for (int j : topo) {
      double downstream = std::max(il[j], 0.0);
      for (const Link* l : out[j]) downstream += sum_of(pipe[{j, l->to}]);
      for (const Link* l : in[j]) c += l->h * std::max(ilr[{l->from, j}] + downstream, 0.0);
      if (out[j].empty()) {
        c += site[j]->penalty * std::max(bo_ext[j], 0.0);
      } else {
        for (const Link* l : out[j]) c += site[j]->penalty * std::max(bo[{j, l->to}], 0.0);
      }
    }
    res.period_cost.push_back(c);
    res.total += c;
  }
  for (int j : topo) res.total -= site[j]->salvage * std::max(il[j], 0.0);
  return res;
}

/// A random instance with at most three nodes, as an oracle problem and as a
/// library network with matching OULs and demand table.
struct Case {
  Problem problem;
  smeio::Network network;
  std::vector<double> ouls;                  // decision-edge order
  std::vector<std::vector<double>> demand;   // [t][ordering position]
};

inline Case random_case(std::mt19937_64& rng, int max_horizon = 5) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * u01(rng); };
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

  Problem pb;
  pb.horizon = 1 + pick(max_horizon);
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> leaves;
  switch (pick(5)) {
    case 0: arcs = {{0, 1}}; leaves = {1}; break;
    case 1: arcs = {{0, 1}, {1, 2}}; leaves = {2}; break;
    case 2: arcs = {{0, 1}, {1, 2}, {2, 3}}; leaves = {3}; break;
    case 3: arcs = {{0, 1}, {0, 2}, {1, 3}, {2, 3}}; leaves = {3}; break;
    default: arcs = {{0, 1}, {1, 2}, {1, 3}}; leaves = {2, 3}; break;
  }
  int nodes = 0;
  for (auto [a, b] : arcs) nodes = std::max(nodes, b);
  for (int id = 1; id <= nodes; ++id) {
    Site s{id, smeio::NodeKind::plain};
    int preds = 0;
    for (auto [a, b] : arcs) preds += b == id;
    if (preds > 1) s.kind = pick(2) ? smeio::NodeKind::assembly_and : smeio::NodeKind::assembly_or;
    if (std::find(leaves.begin(), leaves.end(), id) != leaves.end()) s.mean = uni(2.0, 10.0);
    s.penalty = uni(1.0, 20.0);
    s.salvage = pick(2) ? uni(0.0, 3.0) : 0.0;
    pb.sites.push_back(s);
  }
  const bool explicit_init = pick(2) == 1;
  for (auto [a, b] : arcs) {
    Link l{a, b, a == 0 ? pick(3) : 1 + pick(3), uni(0.5, 5.0), uni(-2.0, 30.0)};
    if (explicit_init) l.init = uni(0.0, 20.0);
    pb.links.push_back(l);
  }
  for (int leaf : leaves) {
    std::vector<double> d;
    for (int t = 0; t < pb.horizon; ++t) d.push_back(std::max(0.0, uni(-1.0, 2.0 * pb.sites[leaf - 1].mean)));
    pb.demand[leaf] = d;
  }

  smeio::RawNetwork raw;
  for (const auto& s : pb.sites) {
    smeio::NodeSpec n{s.id, s.kind, std::nullopt, std::nullopt};
    if (s.salvage > 0.0) n.salvage = smeio::CostExpr::linear(s.salvage);
    if (s.mean > 0.0) n.demand = smeio::normal_demand(s.mean, 1.0);
    raw.nodes.push_back(n);
  }
  for (const auto& l : pb.links) {
    smeio::EdgeSpec e{l.from, l.to, l.lead, smeio::CostExpr::linear(l.h),
                      smeio::CostExpr::linear(pb.sites[static_cast<std::size_t>(l.to - 1)].penalty), std::nullopt};
    if (l.init >= 0.0) e.init_level = l.init;
    raw.edges.push_back(e);
  }
  Case c{pb, smeio::Network::validate(raw), {}, {}};
  for (const auto& e : c.network.edges()) {
    for (const auto& l : pb.links) {
      if (l.from == e.from && l.to == e.to) c.ouls.push_back(l.oul);
    }
  }
  for (int t = 0; t < pb.horizon; ++t) {
    std::vector<double> row(c.network.node_count(), 0.0);
    for (const auto& [id, d] : pb.demand) row[static_cast<std::size_t>(c.network.position_of(id))] = d[static_cast<std::size_t>(t)];
    c.demand.push_back(row);
  }
  return c;
}

/// Demand callback for the library simulator reading a case's table.
inline auto table_demand(const Case& c) {
  return [&c](std::size_t pos, int t) { return c.demand[static_cast<std::size_t>(t)][pos]; };
}

}  // namespace oracle

#endif  // SMEIO_TESTS_ORACLE_HPP
