#include <gtest/gtest.h>

#include "smeio/smeio.hpp"

using namespace smeio;
using K = NetworkError::Kind;

namespace {

NodeSpec demand_node(int id, double mu = 10.0) { return NodeSpec{id, NodeKind::plain, std::nullopt, normal_demand(mu, 1.0)}; }
NodeSpec inner(int id, NodeKind kind = NodeKind::plain) { return NodeSpec{id, kind, std::nullopt, std::nullopt}; }
EdgeSpec edge(int from, int to, int lead = 1, double p = 5.0) {
  return EdgeSpec{from, to, lead, CostExpr::linear(1.0), CostExpr::linear(p), std::nullopt};
}

K kind_of(const RawNetwork& raw) {
  try {
    (void)Network::validate(raw);
  } catch (const NetworkError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "network validated";
  return K::cycle_detected;
}

// 0 -> 1 -> {2, 3}, 0 -> 4, {3, 4} -> 5 (assembly_and); demand at 2 and 5.
RawNetwork mixed() {
  RawNetwork raw;
  raw.nodes = {inner(1), demand_node(2, 4.0), inner(3), inner(4), NodeSpec{5, NodeKind::assembly_and, std::nullopt, normal_demand(6.0, 1.0)}};
  raw.edges = {edge(0, 1, 2), edge(1, 2, 1), edge(1, 3, 1), edge(0, 4, 1), edge(3, 5, 2), edge(4, 5, 1)};
  return raw;
}

}  // namespace

TEST(Network, OrderingByTotalLeadTimeThenId) {
  const Network net = Network::validate(mixed());
  // TLT: 1:2, 2:3, 3:3, 4:1, 5:max(3+2, 1+1)=5
  EXPECT_EQ(net.ordering(), (std::vector<int>{4, 1, 2, 3, 5}));
  EXPECT_EQ(total_lead_time(net, 5), 5);
  EXPECT_EQ(total_lead_time(net, 0), 0);
  EXPECT_EQ(net.max_total_lead_time(), 5);
}

TEST(Network, DecisionEdgesSortedByDownstreamThenUpstream) {
  const Network net = Network::validate(mixed());
  const std::vector<std::pair<int, int>> expect{{0, 4}, {0, 1}, {1, 2}, {1, 3}, {4, 5}, {3, 5}};
  EXPECT_EQ(decision_edges(net), expect);
  for (std::size_t e = 0; e < expect.size(); ++e) {
    EXPECT_EQ(net.edge_index(expect[e].first, expect[e].second), static_cast<int>(e));
  }
  EXPECT_EQ(net.edge_index(2, 1), -1);
}

TEST(Network, DerivedQuantities) {
  const Network net = Network::validate(mixed());
  EXPECT_DOUBLE_EQ(net.node(5).throughput, 6.0);
  EXPECT_DOUBLE_EQ(net.node(3).throughput, 6.0);
  EXPECT_DOUBLE_EQ(net.node(1).throughput, 10.0);
  EXPECT_DOUBLE_EQ(net.node(4).throughput, 6.0);
  EXPECT_EQ(net.node(5).echelon, 3);
  EXPECT_EQ(net.node(1).echelon, 1);
  EXPECT_EQ(net.node(5).max_in_lead_time, 2);
  const auto ltd = net.lead_time_demand();
  EXPECT_DOUBLE_EQ(ltd[static_cast<std::size_t>(net.edge_index(0, 1))], 20.0);
  EXPECT_DOUBLE_EQ(ltd[static_cast<std::size_t>(net.edge_index(3, 5))], 12.0);
  EXPECT_EQ(net.node(1).out_edges.size(), 2u);
  EXPECT_EQ(net.node(5).in_edges.size(), 2u);
}

TEST(Network, RawRoundTripPreservesLayout) {
  RawNetwork raw = mixed();
  for (auto& e : raw.edges) e.init_level = 3.0 + e.to;
  const Network a = Network::validate(raw);
  const Network b = Network::validate(a.to_raw());
  EXPECT_EQ(decision_edges(a), decision_edges(b));
  EXPECT_EQ(a.ordering(), b.ordering());
  EXPECT_EQ(a.init_levels(), b.init_levels());
  EXPECT_TRUE(b.has_explicit_init());
}

TEST(Network, WithInitLevels) {
  const Network net = Network::validate(mixed());
  EXPECT_FALSE(net.has_explicit_init());
  const Network seeded = net.with_init_levels({1, 2, 3, 4, 5, 6});
  EXPECT_TRUE(seeded.has_explicit_init());
  EXPECT_DOUBLE_EQ(*seeded.edge_at(5).init_level, 6.0);
  EXPECT_THROW((void)net.with_init_levels({1, 2}), std::invalid_argument);
}

TEST(Network, RejectsCycles) {
  RawNetwork raw;
  raw.nodes = {inner(1), inner(2, NodeKind::assembly_or), demand_node(3)};
  raw.edges = {edge(0, 1), edge(1, 2), edge(3, 2), edge(2, 3)};
  EXPECT_EQ(kind_of(raw), K::cycle_detected);
  raw.edges = {edge(0, 1), edge(1, 1)};
  EXPECT_EQ(kind_of(raw), K::cycle_detected);
}

TEST(Network, RejectsUnreachableNodes) {
  RawNetwork raw;
  raw.nodes = {demand_node(1), demand_node(2)};
  raw.edges = {edge(0, 1)};
  EXPECT_EQ(kind_of(raw), K::disconnected);
}

TEST(Network, RejectsMixedSuppliersAndCustomers) {
  RawNetwork raw;
  raw.nodes = {inner(1), NodeSpec{2, NodeKind::assembly_and, std::nullopt, normal_demand(1, 1)}};
  raw.edges = {edge(0, 1), edge(0, 2), edge(1, 2)};
  EXPECT_EQ(kind_of(raw), K::mixed_internal_external_supplier);

  raw.nodes = {demand_node(1), demand_node(2)};
  raw.edges = {edge(0, 1), edge(1, 2)};
  EXPECT_EQ(kind_of(raw), K::mixed_internal_external_customer);

  raw.nodes = {inner(1)};
  raw.edges = {edge(0, 1)};
  EXPECT_EQ(kind_of(raw), K::no_customer);
}

TEST(Network, RejectsKindMismatch) {
  RawNetwork raw;
  raw.nodes = {NodeSpec{1, NodeKind::assembly_and, std::nullopt, normal_demand(1, 1)}};
  raw.edges = {edge(0, 1)};
  EXPECT_EQ(kind_of(raw), K::assembly_kind_on_single_predecessor);

  raw.nodes = {inner(1), inner(2), demand_node(3)};
  raw.edges = {edge(0, 1), edge(0, 2), edge(1, 3), edge(2, 3)};
  EXPECT_EQ(kind_of(raw), K::plain_kind_on_multiple_predecessors);
}

TEST(Network, RejectsBadIdsAndEdges) {
  RawNetwork raw;
  raw.nodes = {demand_node(0)};
  EXPECT_EQ(kind_of(raw), K::reserved_node_id);

  raw.nodes = {demand_node(1), demand_node(1)};
  raw.edges = {edge(0, 1)};
  EXPECT_EQ(kind_of(raw), K::duplicate_node_id);

  raw.nodes = {demand_node(1)};
  raw.edges = {edge(0, 1), edge(0, 1)};
  EXPECT_EQ(kind_of(raw), K::duplicate_edge);

  raw.edges = {edge(0, 9)};
  EXPECT_EQ(kind_of(raw), K::unknown_node);

  raw.edges = {edge(0, 1, -1)};
  EXPECT_EQ(kind_of(raw), K::invalid_lead_time);

  raw.nodes = {inner(1), demand_node(2)};
  raw.edges = {edge(0, 1), edge(1, 2, 0)};
  EXPECT_EQ(kind_of(raw), K::zero_lead_time_internal);

  raw.edges = {edge(0, 1, 0), edge(1, 2, 1)};
  EXPECT_NO_THROW((void)Network::validate(raw));

  raw.edges[1].init_level = -1.0;
  EXPECT_EQ(kind_of(raw), K::invalid_init_level);
  raw.edges[1].init_level = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of(raw), K::invalid_init_level);
}

TEST(Network, RejectsConflictingStockout) {
  RawNetwork raw = mixed();
  raw.edges[5].stockout = CostExpr::linear(7.0);
  EXPECT_EQ(kind_of(raw), K::conflicting_stockout);
}

TEST(Network, ErrorMessageNamesTheKind) {
  RawNetwork raw;
  raw.nodes = {demand_node(1), demand_node(1)};
  try {
    (void)Network::validate(raw);
    FAIL();
  } catch (const NetworkError& e) {
    EXPECT_NE(std::string(e.what()).find("DuplicateNodeId"), std::string::npos);
  }
}

TEST(Network, FixturesAreValid) {
  for (const auto& id : fixture_ids()) {
    const Fixture f = fixture(id);
    EXPECT_GT(f.instance.network.edge_count(), 0u) << id;
    EXPECT_EQ(f.instance.name, id);
  }
  EXPECT_THROW((void)fixture("serial.case11"), UnknownFixture);
  EXPECT_THROW((void)fixture("table1.case8.L0"), UnknownFixture);
}
