#ifndef SMEIO_NETWORK_HPP
#define SMEIO_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smeio/cost_expr.hpp"
#include "smeio/stochastics.hpp"

namespace smeio {

enum class NodeKind { plain, assembly_and, assembly_or };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::plain: return "plain";
    case NodeKind::assembly_and: return "assembly_and";
    case NodeKind::assembly_or: return "assembly_or";
  }
  return "plain";
}

/// Node as declared in an instance file. Id 0 is the implicit infinite source.
struct NodeSpec {
  int id = 0;
  NodeKind kind = NodeKind::plain;
  std::optional<CostExpr> salvage;  // reward on ending finished goods
  std::optional<DemandDist> demand;  // external customer
};

/// Edge (from -> to). `stockout` is charged on backorders held at `to`.
struct EdgeSpec {
  int from = 0;
  int to = 0;
  int lead_time = 1;
  CostExpr holding;
  CostExpr stockout;
  std::optional<double> init_level;
};

struct RawNetwork {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
};

class NetworkError : public std::runtime_error {
 public:
  enum class Kind {
    cycle_detected,
    disconnected,
    mixed_internal_external_supplier,
    mixed_internal_external_customer,
    no_customer,
    assembly_kind_on_single_predecessor,
    plain_kind_on_multiple_predecessors,
    duplicate_node_id,
    duplicate_edge,
    reserved_node_id,
    unknown_node,
    invalid_lead_time,
    zero_lead_time_internal,
    conflicting_stockout,
    invalid_init_level,
  };

  NetworkError(Kind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  Kind kind() const { return kind_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::cycle_detected: return "CycleDetected";
      case Kind::disconnected: return "Disconnected";
      case Kind::mixed_internal_external_supplier: return "MixedInternalExternalSupplier";
      case Kind::mixed_internal_external_customer: return "MixedInternalExternalCustomer";
      case Kind::no_customer: return "NoCustomer";
      case Kind::assembly_kind_on_single_predecessor: return "AssemblyKindOnSinglePredecessor";
      case Kind::plain_kind_on_multiple_predecessors: return "PlainKindOnMultiplePredecessors";
      case Kind::duplicate_node_id: return "DuplicateNodeId";
      case Kind::duplicate_edge: return "DuplicateEdge";
      case Kind::reserved_node_id: return "ReservedNodeId";
      case Kind::unknown_node: return "UnknownNode";
      case Kind::invalid_lead_time: return "InvalidLeadTime";
      case Kind::zero_lead_time_internal: return "ZeroLeadTimeInternal";
      case Kind::conflicting_stockout: return "ConflictingStockout";
      case Kind::invalid_init_level: return "InvalidInitLevel";
    }
    return "NetworkError";
  }

 private:
  Kind kind_;
};

/// Decision edge in OUL-vector layout.
struct Edge {
  int from = 0;
  int to = 0;
  int from_pos = -1;  // position of `from` in the node ordering, -1 for the source
  int to_pos = 0;
  int lead_time = 1;
  CostExpr holding;
  CostExpr stockout;
  std::optional<double> init_level;

  bool from_source() const { return from_pos < 0; }
};

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::plain;
  std::optional<CostExpr> salvage;
  std::optional<DemandDist> demand;
  CostExpr stockout;             // penalty on backorders held here
  std::vector<int> in_edges;     // decision-edge indices, layout order
  std::vector<int> out_edges;    // decision-edge indices, layout order
  int total_lead_time = 0;
  int echelon = 0;               // longest hop count from the source
  double throughput = 0.0;       // mean external demand this node serves per period
  int max_in_lead_time = 0;
};

/// Validated, immutable supply-chain network.
///
/// Real nodes are stored by their position in the canonical ordering
/// (ascending total lead time from the source, ties by id); edges are stored
/// in decision-edge order, sorted by (position of `to`, position of `from`).
class Network {
 public:
  static Network validate(const RawNetwork& raw);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node_at(std::size_t pos) const { return nodes_.at(pos); }
  const Edge& edge_at(std::size_t e) const { return edges_.at(e); }

  /// Node ids in canonical order.
  std::vector<int> ordering() const {
    std::vector<int> ids;
    ids.reserve(nodes_.size());
    for (const auto& n : nodes_) ids.push_back(n.id);
    return ids;
  }

  int position_of(int id) const {
    const auto it = pos_of_id_.find(id);
    if (it == pos_of_id_.end()) throw std::out_of_range("unknown node id " + std::to_string(id));
    return it->second;
  }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(position_of(id))]; }

  int edge_index(int from, int to) const {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].from == from && edges_[e].to == to) return static_cast<int>(e);
    }
    return -1;
  }

  int max_total_lead_time() const {
    int m = 0;
    for (const auto& n : nodes_) m = std::max(m, n.total_lead_time);
    return m;
  }

  bool has_explicit_init() const {
    return !edges_.empty() &&
           std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.init_level.has_value(); });
  }

  std::vector<double> init_levels() const {
    std::vector<double> v;
    for (const auto& e : edges_) v.push_back(e.init_level.value_or(0.0));
    return v;
  }

  /// Mean lead-time demand seen on each decision edge: throughput of the
  /// downstream node times the edge lead time.
  std::vector<double> lead_time_demand() const {
    std::vector<double> v;
    for (const auto& e : edges_) {
      v.push_back(nodes_[static_cast<std::size_t>(e.to_pos)].throughput * e.lead_time);
    }
    return v;
  }

  /// Copy with explicit per-edge initial levels (decision-edge order).
  Network with_init_levels(const std::vector<double>& levels) const {
    if (levels.size() != edges_.size()) throw std::invalid_argument("with_init_levels: dimension mismatch");
    Network copy = *this;
    for (std::size_t e = 0; e < levels.size(); ++e) copy.edges_[e].init_level = levels[e];
    return copy;
  }

  /// Raw form suitable for serialisation; validate(to_raw()) reproduces *this.
  RawNetwork to_raw() const {
    RawNetwork raw;
    for (const auto& n : nodes_) raw.nodes.push_back(NodeSpec{n.id, n.kind, n.salvage, n.demand});
    for (const auto& e : edges_) {
      raw.edges.push_back(EdgeSpec{e.from, e.to, e.lead_time, e.holding, e.stockout, e.init_level});
    }
    return raw;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<int, int> pos_of_id_;
};

inline Network validate(const RawNetwork& raw) { return Network::validate(raw); }

inline std::vector<std::pair<int, int>> decision_edges(const Network& net) {
  std::vector<std::pair<int, int>> out;
  out.reserve(net.edge_count());
  for (const auto& e : net.edges()) out.emplace_back(e.from, e.to);
  return out;
}

inline int total_lead_time(const Network& net, int node_id) {
  if (node_id == 0) return 0;
  return net.node(node_id).total_lead_time;
}

inline Network Network::validate(const RawNetwork& raw) {
  using K = NetworkError::Kind;
  const auto node_name = [](int id) { return "node " + std::to_string(id); };
  const auto edge_name = [](int a, int b) { return "edge (" + std::to_string(a) + "," + std::to_string(b) + ")"; };

  std::map<int, const NodeSpec*> spec_of;
  for (const auto& n : raw.nodes) {
    if (n.id == 0) throw NetworkError(K::reserved_node_id, "node id 0 is the implicit source");
    if (n.id < 0) throw NetworkError(K::unknown_node, "node ids must be positive, got " + std::to_string(n.id));
    if (!spec_of.emplace(n.id, &n).second) throw NetworkError(K::duplicate_node_id, node_name(n.id));
  }

  std::map<int, std::vector<int>> preds;  // raw edge indices
  std::map<int, std::vector<int>> succs;
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < raw.edges.size(); ++k) {
    const auto& e = raw.edges[k];
    if (e.from == e.to) throw NetworkError(K::cycle_detected, "self-loop on " + node_name(e.from));
    if (e.to == 0) throw NetworkError(K::cycle_detected, edge_name(e.from, e.to) + " points into the source");
    if (e.from != 0 && !spec_of.count(e.from)) throw NetworkError(K::unknown_node, edge_name(e.from, e.to) + " references undeclared " + node_name(e.from));
    if (!spec_of.count(e.to)) throw NetworkError(K::unknown_node, edge_name(e.from, e.to) + " references undeclared " + node_name(e.to));
    if (!seen.emplace(e.from, e.to).second) throw NetworkError(K::duplicate_edge, edge_name(e.from, e.to));
    if (e.lead_time < 0) throw NetworkError(K::invalid_lead_time, edge_name(e.from, e.to) + " has a negative lead time");
    if (e.lead_time == 0 && e.from != 0) {
      throw NetworkError(K::zero_lead_time_internal, edge_name(e.from, e.to) + " is internal and needs lead time >= 1");
    }
    if (e.init_level && !(std::isfinite(*e.init_level) && *e.init_level >= 0.0)) {
      throw NetworkError(K::invalid_init_level, edge_name(e.from, e.to) + " needs a finite nonnegative init_level");
    }
    preds[e.to].push_back(static_cast<int>(k));
    succs[e.from].push_back(static_cast<int>(k));
  }

  // Topological sort over real nodes plus the source (Kahn).
  std::map<int, int> indegree;
  for (const auto& [id, _] : spec_of) indegree[id] = static_cast<int>(preds[id].size());
  std::queue<int> ready;
  ready.push(0);
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push(id);
  }
  std::vector<int> topo;
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop();
    topo.push_back(u);
    for (int k : succs[u]) {
      const int v = raw.edges[static_cast<std::size_t>(k)].to;
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (topo.size() != spec_of.size() + 1) throw NetworkError(K::cycle_detected, "the network contains a directed cycle");

  // Reachability from the source.
  std::set<int> reached{0};
  for (int u : topo) {
    if (!reached.count(u)) continue;
    for (int k : succs[u]) reached.insert(raw.edges[static_cast<std::size_t>(k)].to);
  }
  for (const auto& [id, _] : spec_of) {
    if (!reached.count(id)) throw NetworkError(K::disconnected, node_name(id) + " is not reachable from the source");
  }

  for (const auto& [id, spec] : spec_of) {
    const auto& in = preds[id];
    const bool external_supplier = std::any_of(in.begin(), in.end(), [&](int k) { return raw.edges[static_cast<std::size_t>(k)].from == 0; });
    if (external_supplier && in.size() > 1) {
      throw NetworkError(K::mixed_internal_external_supplier, node_name(id) + " has both the source and internal suppliers");
    }
    const bool internal_customers = !succs[id].empty();
    if (internal_customers && spec->demand) {
      throw NetworkError(K::mixed_internal_external_customer, node_name(id) + " has both external demand and internal customers");
    }
    if (!internal_customers && !spec->demand) throw NetworkError(K::no_customer, node_name(id) + " has neither demand nor successors");
    if (spec->kind != NodeKind::plain && in.size() < 2) {
      throw NetworkError(K::assembly_kind_on_single_predecessor, node_name(id) + " is an assembly node with one predecessor");
    }
    if (spec->kind == NodeKind::plain && in.size() >= 2) {
      throw NetworkError(K::plain_kind_on_multiple_predecessors, node_name(id) + " has several predecessors; declare assembly_and or assembly_or");
    }
    for (std::size_t a = 1; a < in.size(); ++a) {
      if (!(raw.edges[static_cast<std::size_t>(in[a])].stockout == raw.edges[static_cast<std::size_t>(in[0])].stockout)) {
        throw NetworkError(K::conflicting_stockout, "incoming edges of " + node_name(id) + " disagree on the stockout function");
      }
    }
  }

  // Longest lead-time path and hop depth, in topological order.
  std::map<int, int> tlt{{0, 0}};
  std::map<int, int> depth{{0, 0}};
  for (int u : topo) {
    for (int k : succs[u]) {
      const auto& e = raw.edges[static_cast<std::size_t>(k)];
      tlt[e.to] = std::max(tlt.count(e.to) ? tlt[e.to] : 0, tlt[u] + e.lead_time);
      depth[e.to] = std::max(depth.count(e.to) ? depth[e.to] : 0, depth[u] + 1);
    }
  }

  Network net;
  std::vector<int> ids;
  for (const auto& [id, _] : spec_of) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return std::pair(tlt[a], a) < std::pair(tlt[b], b); });
  for (std::size_t p = 0; p < ids.size(); ++p) {
    const NodeSpec& s = *spec_of[ids[p]];
    Node n;
    n.id = s.id;
    n.kind = s.kind;
    n.salvage = s.salvage;
    n.demand = s.demand;
    n.total_lead_time = tlt[s.id];
    n.echelon = depth[s.id];
    net.pos_of_id_[s.id] = static_cast<int>(p);
    net.nodes_.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  for (const auto& e : raw.edges) {
    Edge d;
    d.from = e.from;
    d.to = e.to;
    d.from_pos = e.from == 0 ? -1 : net.pos_of_id_[e.from];
    d.to_pos = net.pos_of_id_[e.to];
    d.lead_time = e.lead_time;
    d.holding = e.holding;
    d.stockout = e.stockout;
    d.init_level = e.init_level;
    edges.push_back(std::move(d));
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.to_pos, a.from_pos) < std::pair(b.to_pos, b.from_pos);
  });
  net.edges_ = std::move(edges);
  for (std::size_t e = 0; e < net.edges_.size(); ++e) {
    const Edge& d = net.edges_[e];
    Node& to = net.nodes_[static_cast<std::size_t>(d.to_pos)];
    to.in_edges.push_back(static_cast<int>(e));
    to.stockout = d.stockout;
    to.max_in_lead_time = std::max(to.max_in_lead_time, d.lead_time);
    if (d.from_pos >= 0) net.nodes_[static_cast<std::size_t>(d.from_pos)].out_edges.push_back(static_cast<int>(e));
  }

  // Throughput, downstream first.
  for (std::size_t p = net.nodes_.size(); p-- > 0;) {
    Node& n = net.nodes_[p];
    if (n.demand) {
      n.throughput = mean(*n.demand);
    } else {
      double t = 0.0;
      for (int e : n.out_edges) t += net.nodes_[static_cast<std::size_t>(net.edges_[static_cast<std::size_t>(e)].to_pos)].throughput;
      n.throughput = t;
    }
  }
  return net;
}

}  // namespace smeio

#endif  // SMEIO_NETWORK_HPP
