#ifndef SMEIO_FIXTURES_HPP
#define SMEIO_FIXTURES_HPP

// Published benchmark instances with their reference solutions. Reference
// OUL vectors are stored in decision-edge order; costs are per period.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "smeio/cost_expr.hpp"
#include "smeio/instance.hpp"
#include "smeio/network.hpp"
#include "smeio/stochastics.hpp"

namespace smeio {

struct ReferenceRow {
  std::string method;        // analytical, dnn, dfo, cd, enumeration, random_best, ...
  std::vector<double> ouls;  // empty when only the cost is published
  double cost = 0.0;
};

struct Fixture {
  std::string id;
  Instance instance;
  std::vector<ReferenceRow> references;
  std::string note;

  const ReferenceRow* find_reference(const std::string& method) const {
    for (const auto& r : references) {
      if (r.method == method) return &r;
    }
    return nullptr;
  }
  const ReferenceRow& reference(const std::string& method) const {
    const ReferenceRow* r = find_reference(method);
    if (!r) throw std::out_of_range("fixture " + id + " has no '" + method + "' reference");
    return *r;
  }
};

class UnknownFixture : public std::out_of_range {
 public:
  explicit UnknownFixture(const std::string& id) : std::out_of_range("UnknownFixture: " + id) {}
};

namespace fixtures_detail {

using Triples = std::vector<std::tuple<int, int, double>>;

inline CostExpr lin(double c) { return CostExpr::linear(c); }

inline CostExpr step(double t, CostExpr below, CostExpr above) {
  return CostExpr::piecewise(t, std::move(below), std::move(above));
}

/// (x<3, a x, b x) holding form.
inline CostExpr hold_pw(double a, double b) { return step(3.0, lin(a), lin(b)); }

/// (x<3, a x, b x^2) shortage form.
inline CostExpr short_pw(double a, double b) { return step(3.0, lin(a), CostExpr::power(b, 2)); }

inline CostExpr node7_salvage() {
  return step(2.0, CostExpr::affine(15.0, -0.5),
              CostExpr::max({CostExpr::sum({CostExpr::power(-3.5, 2), CostExpr::linear(14.0)}), CostExpr::constant(3.0)}));
}

/// Published holding rates are local to the holding node. Each in-edge
/// carries an equal share, so finished and outbound stock is charged once at
/// the local rate and each raw buffer at its share.
inline RawNetwork share_local_holding(RawNetwork raw) {
  for (auto& e : raw.edges) {
    const auto n = std::count_if(raw.edges.begin(), raw.edges.end(), [&](const EdgeSpec& o) { return o.to == e.to; });
    if (n > 1) e.holding = e.holding.scaled(1.0 / static_cast<double>(n));
  }
  return raw;
}

inline ReferenceRow row(const Network& net, std::string method, const std::vector<int>& from,
                        const std::vector<int>& to, const std::vector<double>& v, double cost) {
  Triples t;
  for (std::size_t k = 0; k < v.size(); ++k) t.emplace_back(from[k], to[k], v[k]);
  return ReferenceRow{std::move(method), align_to_edges(net, t), cost};
}

inline Fixture table1(int c, bool zero_lead) {
  static const double mu[] = {10, 10, 50, 50, 100, 100, 100};
  static const double sigma[] = {1, 2, 1, 5, 1, 5, 10};
  static const double an_oul[] = {10.67, 11.35, 50.67, 53.37, 100.67, 103.37, 106.74};
  static const double an_cost[] = {12.71, 25.42, 12.71, 63.56, 12.71, 63.56, 127.11};
  static const double dnn_oul[] = {10.68, 11.50, 50.58, 53.30, 100.77, 103.28, 106.79};
  static const double dnn_cost[] = {12.71, 25.47, 12.75, 63.59, 12.75, 63.58, 127.12};
  const auto k = static_cast<std::size_t>(c - 1);
  RawNetwork raw;
  raw.nodes.push_back(NodeSpec{1, NodeKind::plain, std::nullopt, normal_demand(mu[k], sigma[k])});
  raw.edges.push_back(EdgeSpec{0, 1, zero_lead ? 0 : 1, lin(10), lin(30), std::nullopt});
  Fixture f;
  f.id = "table1.case" + std::to_string(c) + (zero_lead ? ".L0" : "");
  f.instance.name = f.id;
  f.instance.network = Network::validate(raw);
  f.instance.horizon = 2;
  if (zero_lead) {
    f.references = {{"analytical", {0.0}, 0.0}, {"dnn", {0.0}, 0.0}};
  } else {
    f.references = {{"analytical", {an_oul[k]}, an_cost[k]}, {"dnn", {dnn_oul[k]}, dnn_cost[k]}};
  }
  return f;
}

struct SerialCase {
  double mu, sigma;
  std::vector<double> h, p;
  std::vector<int> lead;
  std::vector<double> analytical;
  double analytical_cost;
  std::vector<double> dnn;
  double dnn_cost;
  std::vector<double> dfo;
  double dfo_cost;
};

inline const std::vector<SerialCase>& serial_cases() {
  static const std::vector<SerialCase> cases = {
      {3, 0.5, {5, 8.2}, {0, 25.5}, {1, 1}, {2.91, 3.64}, 22.21, {2.91, 3.72}, 22.34, {1.22, 5.10}, 22.55},
      {6, 1.5, {1.9, 4.1}, {0, 11.3}, {2, 1}, {12.58, 7.60}, 23.07, {12.58, 7.65}, 23.17, {12.05, 7.58}, 23.20},
      {5, 1, {2, 4, 7}, {0, 0, 37.12}, {2, 1, 1}, {10.69, 5.53, 6.49}, 47.65, {10.08, 5.39, 6.64}, 47.90,
       {10.54, 5.35, 6.57}, 50.01},
      {50, 3, {5, 10, 25}, {0, 0, 50}, {2, 1, 1}, {101.45, 51.40, 52.70}, 879.88, {99.29, 51.03, 52.71}, 885.63,
       {97.02, 53.59, 53.02}, 885.49},
      {100, 5, {25, 25, 50}, {0, 0, 100}, {1, 2, 2}, {71.026, 228.29, 207.04}, 10568.23, {87.71, 204.63, 208.90},
       10625.01, {79.33, 211.20, 208.51}, 10695.88},
      {100, 10, {10, 20, 30}, {0, 0, 100}, {1, 1, 1}, {99.53, 102.58, 114.05}, 3630.14, {93.36, 103.42, 114.26},
       3651.63, {95.83, 100.87, 117.90}, 3638.18},
      {3, 0.4, {4, 5.75, 7.90, 10.8}, {0, 0, 0, 35.5}, {1, 1, 1, 1}, {2.78, 3.13, 3.19, 3.60}, 63.39,
       {2.78, 3.13, 3.19, 3.74}, 63.84, {-12.03, -8.86, -3.93, 1.90}, 592.51},
      {5, 1.2, {5, 5, 5, 10}, {0, 0, 0, 30}, {1, 1, 1, 1}, {-3.80, 9.80, 9.80, 6.35}, 101.48, {1.48, 6.12, 7.00, 6.46},
       104.04, {-4.96, -3.69, -1.90, 0.02}, 674.62},
      {80, 4, {10, 20, 30, 40, 50}, {0, 0, 0, 0, 200}, {1, 1, 1, 1, 1}, {80.15, 80.15, 81.17, 81.68, 86.99}, 8559.85,
       {76.83, 78.02, 79.60, 81.62, 87.40}, 8678.38, {80.49, 77.62, 80.04, 77.45, 92.18}, 8585.50},
      {25, 2, {5, 10, 25, 50, 50}, {0, 0, 0, 0, 150}, {2, 1, 1, 1, 1}, {51.57, 26.30, 25.05, 20.25, 33.01}, 2500.79,
       {48.40, 25.65, 24.02, 22.90, 30.12}, 2581.41, {49.44, 25.51, 23.04, 23.82, 31.17}, 2527.1},
  };
  return cases;
}

inline Fixture serial(int c) {
  const SerialCase& s = serial_cases().at(static_cast<std::size_t>(c - 1));
  const int n = static_cast<int>(s.h.size());
  RawNetwork raw;
  for (int j = 1; j <= n; ++j) {
    std::optional<DemandDist> d;
    if (j == n) d = normal_demand(s.mu, s.sigma);
    raw.nodes.push_back(NodeSpec{j, NodeKind::plain, std::nullopt, d});
    const auto k = static_cast<std::size_t>(j - 1);
    raw.edges.push_back(EdgeSpec{j - 1, j, s.lead[k], lin(s.h[k]), lin(s.p[k]), std::nullopt});
  }
  Fixture f;
  f.id = "serial.case" + std::to_string(c);
  f.instance.name = f.id;
  f.instance.network = Network::validate(raw);
  f.instance.horizon = 10;
  // Serial OULs are listed upstream first, which is decision-edge order.
  f.references = {{"analytical", s.analytical, s.analytical_cost},
                  {"dnn", s.dnn, s.dnn_cost},
                  {"dfo", s.dfo, s.dfo_cost}};
  if (c == 4) f.note = "analytical OUL of the last stage is published as 52.7040 and transcribed as 52.70";
  return f;
}

struct AssemblyCase {
  double h_src, h_mid, h_leaf, s_leaf;
  int l_src, l_mid, l_leaf;
  double mu, sigma;
  std::vector<double> dnn, cd, enumeration, dfo;
  double dnn_cost, cd_cost, enum_cost, dfo_cost;
};

inline Fixture assembly(int structure, int c) {
  static const std::vector<AssemblyCase> one = {
      {0.25, 0.8, 1.9, 10, 2, 1, 1, 13, 1.2,
       {26.91, 26.8, 26.86, 26.85, 13.55, 13.57, 13.58, 13.57, 14.64, 14.64},
       {25.77, 25.77, 25.77, 25.77, 13.87, 13.87, 13.87, 13.87, 15.08, 15.08},
       {26.72, 26.72, 26.72, 26.72, 13.36, 13.36, 13.36, 13.36, 15.16, 15.16},
       {6.08, 27.32, 21.77, 26.89, 12.20, 14.75, 12.85, 15.36, 14.41, 14.46},
       40.55, 40.26, 40.34, 233.45},
      {2, 4, 7, 37.12, 2, 1, 1, 5, 1,
       {10.08, 10.08, 10.13, 10.12, 5.42, 5.42, 5.38, 5.33, 6.54, 6.59},
       {7.5, 7.5, 7.5, 7.5, 6.04, 6.04, 6.04, 6.04, 8.58, 8.58},
       {7.5, 7.5, 7.5, 7.5, 3.75, 3.75, 3.75, 3.75, 10.69, 10.69},
       {10.19, 11.83, 1.00, 11.15, 4.63, 4.67, 1.46, 4.62, 6.81, 6.99},
       103.77, 101.59, 101.47, 482.63},
      {0.4, 0.9, 2.1, 15, 2, 2, 2, 20, 3,
       {40.98, 40.99, 41.03, 41.07, 42.83, 43.29, 43.26, 42.17, 46.19, 46.14},
       {36.67, 36.67, 36.67, 36.67, 45.19, 45.19, 45.19, 45.19, 47.85, 47.85},
       {35.55, 35.55, 35.55, 35.55, 41.11, 41.11, 41.11, 41.11, 52.22, 52.22},
       {39.66, 22.78, 12.47, 46.63, 39.61, 42.00, 42.41, 40.04, 47.02, 48.82},
       163.15, 161.30, 161.13, 441.43},
      {0.3, 0.8, 2, 15, 2, 2, 2, 5, 1,
       {10.12, 10.19, 10.73, 10.21, 12.74, 12.38, 12.55, 12.20, 12.25, 12.25},
       {9.21, 9.21, 9.21, 9.21, 11.55, 11.55, 11.55, 11.55, 12.62, 12.62},
       {10.27, 10.2, 10.27, 10.27, 10.27, 10.27, 10.27, 10.27, 13.05, 13.05},
       {1.26, 7.59, 9.89, 1.60, 8.06, 7.26, 5.27, 7.94, 15.52, 13.81},
       37.49, 35.97, 35.98, 139.77},
      {0.5, 1, 3, 16, 1, 1, 1, 5, 1,
       {5.01, 5.02, 5.11, 5.06, 7.04, 7.07, 6.98, 6.91, 6.33, 6.23},
       {4.38, 4.38, 4.38, 4.38, 6.23, 6.23, 6.23, 6.23, 6.49, 6.49},
       {3.75, 3.75, 3.75, 3.75, 6.52, 6.52, 6.52, 6.52, 6.52, 6.52},
       {8.79, 7.35, 8.91, 5.23, 3.07, 5.71, 3.08, 5.74, 5.75, 6.38},
       29.04, 27.53, 27.45, 36.03},
  };
  static const std::vector<AssemblyCase> two = {
      {2, 4, 7, 40, 1, 1, 1, 5, 1,
       {5.23, 5.01, 5.22, 4.96, 4.92, 5.9, 6.31, 5.89, 6.97, 5.82, 6.33},
       {3.97, 3.97, 3.97, 3.97, 3.97, 5.49, 5.49, 7.77, 7.77, 7.77, 7.77},
       {3.75, 3.75, 3.75, 3.75, 3.75, 5.83, 5.83, 7.91, 7.91, 7.91, 7.91},
       {6.76, 6.53, 6.80, 6.80, 5.93, 0.80, 5.92, 6.64, 5.75, 6.10, 6.27},
       93.9432, 90.4087, 90.5432, 116.38},
      {0.3, 0.5, 0.9, 3.5, 1, 1, 1, 10, 1,
       {9.93, 9.89, 9.98, 9.86, 9.87, 10.99, 11.39, 12.47, 12.31, 12.5, 11.85},
       {8.98, 8.98, 8.98, 8.98, 8.98, 10.53, 10.53, 12.54, 12.54, 12.54, 12.54},
       {7.5, 7.5, 7.5, 7.5, 7.5, 10.27, 10.27, 14.44, 14.44, 14.44, 14.44},
       {10.89, 10.49, 11.01, 11.24, 10.79, 5.59, 10.47, 10.88, 11.25, 11.12, 11.28},
       23.00, 22.43, 22.48, 25.75},
      {0.5, 3, 6, 25, 1, 1, 1, 10, 2,
       {10.7, 10.43, 10.71, 10.27, 10.24, 11.06, 11.07, 11.54, 11.94, 10.87, 11.62},
       {11.1868, 11.1868, 11.1868, 11.1868, 11.1868, 11.1868, 11.1868, 12.4788, 12.4788, 12.4788, 12.4788},
       {10.27, 10.27, 10.27, 10.27, 10.27, 10.27, 10.27, 13.05, 13.05, 13.05, 13.05},
       {11.57, 19.27, 11.59, 13.77, 13.63, 5.71, 11.56, 11.81, 11.78, 11.77, 11.90},
       86.61, 82.67, 82.32, 90.71},
      {0.6, 1.1, 2.5, 5.4, 1, 1, 1, 7, 1,
       {7.26, 7.16, 7.1, 6.93, 6.88, 7.72, 8.02, 8.22, 7.87, 7.73, 7.43},
       {6.2706, 6.2706, 6.2706, 6.2706, 6.2706, 7.53, 7.53, 8.72, 8.72, 8.72, 8.72},
       {5.25, 5.25, 5.25, 5.25, 5.25, 7.19, 7.19, 10.11, 10.11, 10.11, 10.11},
       {7.47, 7.95, 6.10, 5.57, 7.52, 10.76, 5.42, 7.60, 7.87, 8.18, 9.30},
       34.62, 34.04, 34.17, 42.35},
      {0.25, 0.59, 0.88, 49.7, 1, 1, 1, 11, 2,
       {12.11, 11.97, 11.9, 11.5, 11.59, 13.52, 13.59, 14.86, 14.49, 14.51, 14.29},
       {10.55, 10.55, 10.55, 10.55, 10.55, 12.62, 12.62, 18.44, 18.44, 18.44, 18.44},
       {8.25, 8.25, 8.25, 8.25, 8.25, 12.83, 12.83, 20.47, 20.47, 20.47, 20.47},
       {14.88, 14.55, 14.48, 4.95, 14.22, 2.07, 13.95, 15.89, 15.05, 14.55, 17.67},
       30.98, 28.19, 27.96, 62.76},
  };
  const AssemblyCase& a = (structure == 1 ? one : two).at(static_cast<std::size_t>(c - 1));
  std::vector<int> from, to;
  std::vector<int> tier;  // 0 source-facing, 1 middle, 2 customer-facing
  if (structure == 1) {
    from = {0, 0, 0, 0, 1, 2, 3, 4, 5, 6};
    to = {1, 2, 3, 4, 5, 5, 6, 6, 7, 7};
    tier = {0, 0, 0, 0, 1, 1, 1, 1, 2, 2};
  } else {
    from = {0, 0, 0, 0, 0, 4, 5, 1, 2, 3, 6};
    to = {1, 2, 3, 4, 5, 6, 6, 7, 7, 7, 7};
    tier = {0, 0, 0, 0, 0, 1, 1, 2, 2, 2, 2};
  }
  RawNetwork raw;
  for (int j = 1; j <= 7; ++j) {
    NodeSpec n{j, NodeKind::plain, std::nullopt, std::nullopt};
    if (j == 7) n.demand = normal_demand(a.mu, a.sigma);
    if ((structure == 1 && j >= 5) || (structure == 2 && j >= 6)) n.kind = NodeKind::assembly_and;
    raw.nodes.push_back(n);
  }
  const double h[] = {a.h_src, a.h_mid, a.h_leaf};
  const int l[] = {a.l_src, a.l_mid, a.l_leaf};
  for (std::size_t k = 0; k < from.size(); ++k) {
    const auto t = static_cast<std::size_t>(tier[k]);
    raw.edges.push_back(EdgeSpec{from[k], to[k], structure == 1 ? l[t] : 1, lin(h[t]), lin(t == 2 ? a.s_leaf : 0.0),
                                 std::nullopt});
  }
  Fixture f;
  f.id = "assembly" + std::to_string(structure) + ".case" + std::to_string(c);
  f.instance.name = f.id;
  f.instance.network = Network::validate(share_local_holding(raw));
  f.instance.horizon = 10;
  const Network& net = f.instance.network;
  f.references = {row(net, "dnn", from, to, a.dnn, a.dnn_cost), row(net, "cd", from, to, a.cd, a.cd_cost),
                  row(net, "enumeration", from, to, a.enumeration, a.enum_cost),
                  row(net, "dfo", from, to, a.dfo, a.dfo_cost)};
  return f;
}

inline Fixture mixed_fig1() {
  RawNetwork raw;
  raw.nodes = {{1, NodeKind::plain, std::nullopt, std::nullopt},
               {2, NodeKind::plain, std::nullopt, std::nullopt},
               {3, NodeKind::plain, std::nullopt, std::nullopt},
               {4, NodeKind::assembly_and, std::nullopt, normal_demand(5, 1)},
               {5, NodeKind::assembly_and, std::nullopt, normal_demand(5, 1)}};
  const std::vector<int> from = {0, 1, 1, 2, 2, 3, 3};
  const std::vector<int> to = {1, 2, 3, 4, 5, 4, 5};
  for (std::size_t k = 0; k < from.size(); ++k) {
    const int tier = k == 0 ? 0 : (k < 3 ? 1 : 2);
    const double h[] = {2, 4, 7};
    const double p[] = {4, 12, 37.12};
    const double init[] = {40, 10, 5};
    raw.edges.push_back(EdgeSpec{from[k], to[k], tier == 0 ? 2 : 1, lin(h[tier]), lin(p[tier]), init[tier]});
  }
  Fixture f;
  f.id = "mixed.fig1";
  f.instance.name = f.id;
  f.instance.network = Network::validate(share_local_holding(raw));
  f.instance.horizon = 10;
  const Network& net = f.instance.network;
  f.instance.random_search = RandomSearchSpec{
      align_to_edges(net, {{0, 1, 40}, {1, 2, 10}, {1, 3, 10}, {2, 4, 5}, {2, 5, 5}, {3, 4, 5}, {3, 5, 5}}),
      align_to_edges(net, {{0, 1, 4}, {1, 2, 2}, {1, 3, 2}, {2, 4, 2}, {2, 5, 2}, {3, 4, 2}, {3, 5, 2}})};
  f.references = {
      row(net, "dnn", from, to, {42.87, 11.65, 11.58, 6.73, 6.73, 6.99, 6.41}, 208.80),
      row(net, "random_best", from, to, {41.19, 13.07, 13.21, 8.03, 9.07, 5.14, 8.00}, 211.90),
      row(net, "dfo_25", from, to, {47.69, 12.45, 12.62, 5.51, 5.58, 5.53, 5.40}, 215.21),
      row(net, "spearmint_25", from, to, {41.45, 12.34, 11.76, 5.39, 5.54, 7.02, 5.63}, 214.66),
      row(net, "dfo", from, to, {43.73, 11.46, 11.46, 5.77, 5.77, 5.77, 5.78}, 206.35),
      row(net, "spearmint", from, to, {43.80, 11.45, 11.49, 5.80, 5.77, 5.78, 5.78}, 206.36),
  };
  return f;
}

/// Seven-node network with three assembly-and customer nodes fed by every
/// middle node. `lead01` is the source lead time.
inline RawNetwork complex_topology(int lead01, const std::vector<DemandDist>& leaf_demand,
                                   const std::vector<CostExpr>& node_salvage,
                                   const std::vector<double>& init_by_tier_node) {
  RawNetwork raw;
  for (int j = 1; j <= 7; ++j) {
    NodeSpec n{j, j >= 5 ? NodeKind::assembly_and : NodeKind::plain, std::nullopt, std::nullopt};
    if (j >= 5) n.demand = leaf_demand[static_cast<std::size_t>(j - 5)];
    if (!node_salvage.empty() && !node_salvage[static_cast<std::size_t>(j - 1)].is_zero()) {
      n.salvage = node_salvage[static_cast<std::size_t>(j - 1)];
    }
    raw.nodes.push_back(n);
  }
  auto init = [&](int j) -> std::optional<double> {
    if (init_by_tier_node.empty()) return std::nullopt;
    return init_by_tier_node[static_cast<std::size_t>(j - 1)];
  };
  raw.edges.push_back(EdgeSpec{0, 1, lead01, lin(2), lin(4), init(1)});
  for (int j = 2; j <= 4; ++j) raw.edges.push_back(EdgeSpec{1, j, 1, hold_pw(4, 3), short_pw(12, 4), init(j)});
  for (int i = 2; i <= 4; ++i) {
    for (int j = 5; j <= 7; ++j) raw.edges.push_back(EdgeSpec{i, j, 1, hold_pw(7, 6), short_pw(36, 12), init(j)});
  }
  return share_local_holding(std::move(raw));
}

inline Fixture complex_fig5() {
  const RawNetwork raw = complex_topology(
      2, {normal_demand(5, 1), uniform_int_demand(1, 5), truncated_poisson_demand(3, 6, 10)},
      {CostExpr{}, CostExpr{}, CostExpr{}, CostExpr{}, lin(1.25), lin(1.5), node7_salvage()},
      {45.24, 15.08, 15.08, 15.08, 5.0, 2.5, 7.58});
  Fixture f;
  f.id = "complex.fig5";
  f.instance.name = f.id;
  f.instance.network = Network::validate(raw);
  f.instance.horizon = 10;
  const Network& net = f.instance.network;
  const std::vector<int> from = {0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4};
  const std::vector<int> to = {1, 2, 3, 4, 5, 6, 7, 5, 6, 7, 5, 6, 7};
  auto by_row = [&](const std::vector<double>& v) {
    Triples t;
    for (std::size_t k = 0; k < v.size(); ++k) t.emplace_back(from[k], to[k], v[k]);
    return align_to_edges(net, t);
  };
  f.instance.random_search =
      RandomSearchSpec{by_row({45.24, 15.08, 15.08, 15.08, 5, 2.5, 7.58, 5, 2.5, 7.58, 5, 2.5, 7.58}),
                       by_row({50, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5})};
  f.references = {
      {"dnn", by_row({101.44, 18.75, 20.82, 21.48, 7.29, 6.95, 10.28, 7.21, 6.06, 9.48, 6.11, 6.5, 9.38}), 478.61},
      {"random_best", by_row({100.40, 15.91, 19.84, 21.85, 6.26, 7.16, 9.84, 6.47, 5.73, 9.17, 5.02, 5.15, 7.71}),
       514.69},
      {"dfo", by_row({99.15, 15.94, 16.01, 15.99, 5.20, 3.13, 7.62, 5.41, 2.84, 7.52, 5.44, 2.77, 7.52}), 644.41},
      {"spearmint", by_row({93.86, 29.93, 24.40, 26.01, 5.08, 3.24, 8.02, 5.21, 3.41, 8.22, 5.17, 3.37, 8.37}),
       618.44},
      {"dnn_round1", {}, 626.17},
      {"dnn_round2", {}, 479.68},
      {"dnn_round3", {}, 478.61},
  };
  f.note = "initial level 7.58 on edges into node 7 is the published demand mean; the exact mean of the "
           "truncated Poisson(3) on 6..10 is about 6.59";
  return f;
}

inline Fixture complex_instance(int c) {
  struct Case {
    double r_top, r_mid, r_leaf;
    std::vector<std::pair<double, double>> leaves;
    std::vector<double> dnn, dfo;
    double dnn_cost, dfo_cost;
  };
  static const std::vector<Case> cases = {
      {1.25, 1.5, 1.25, {{5, 1}, {5, 1}, {5, 1}},
       {49.25, 17.75, 17.45, 17.36, 7.3, 6.7, 6.79, 7.55, 6.8, 6.99, 7.92, 6.64, 7.21},
       {52.22203, 18.48301, 18.42489, 18.40821, 5.34762, 5.29257, 5.33311, 5.32846, 5.31856, 5.30957, 5.30319,
        5.30318, 5.28193},
       380.95, 402.41},
      {2, 2, 2, {{6, 1}, {4, 1}, {6, 2}},
       {56.53, 18.64, 19.96, 19.07, 7.8, 6.91, 12.21, 8.36, 7.56, 11.83, 8.19, 5.97, 11.8},
       {57.33026, 20.50994, 18.88558, 19.12507, 7.24254, 4.22521, 6.3352, 6.94252, 4.40232, 7.46706, 7.31975,
        4.39467, 7.27793},
       419.13, 442.42},
      {1, 2, 1, {{5, 1}, {5, 1.2}, {6, 1.5}},
       {53.73, 18.87, 19.43, 18.75, 6.67, 7.28, 12.64, 7.49, 8.19, 10.67, 7.55, 8.59, 9.25},
       {56.46892, 19.30803, 19.16313, 19.61025, 5.41518, 5.61027, 7.17493, 5.40836, 5.44619, 6.90065, 5.90935,
        4.75065, 7.14491},
       407.83, 408.27},
      {2.5, 2.5, 2.5, {{5, 1}, {6, 1}, {4, 1.5}},
       {48.56, 17.56, 16.9, 17.62, 7.11, 7.85, 7.22, 7.19, 8.39, 6.39, 7.64, 8.75, 6.25},
       {52.62784, 17.88147, 17.9517, 16.90722, 5.15377, 7.34585, 4.16108, 5.48897, 7.18886, 4.39452, 5.83787,
        6.75788, 4.72713},
       379.31, 400.047},
  };
  const Case& k = cases.at(static_cast<std::size_t>(c - 1));
  std::vector<DemandDist> leaves;
  for (const auto& [m, s] : k.leaves) leaves.push_back(normal_demand(m, s));
  const RawNetwork raw = complex_topology(
      1, leaves,
      {lin(k.r_top), lin(k.r_mid), lin(k.r_mid), lin(k.r_mid), lin(k.r_leaf), lin(k.r_leaf), lin(k.r_leaf)}, {});
  Fixture f;
  f.id = "complex.inst" + std::to_string(c);
  f.instance.name = f.id;
  f.instance.network = Network::validate(raw);
  f.instance.horizon = 10;
  const Network& net = f.instance.network;
  // Published rows list node 5's suppliers, then node 6's, then node 7's.
  const std::vector<int> from = {0, 1, 1, 1, 2, 3, 4, 2, 3, 4, 2, 3, 4};
  const std::vector<int> to = {1, 2, 3, 4, 5, 5, 5, 6, 6, 6, 7, 7, 7};
  f.references = {row(net, "dnn", from, to, k.dnn, k.dnn_cost), row(net, "dfo", from, to, k.dfo, k.dfo_cost)};
  f.note = "the three published demand rows are assigned to customer nodes 5, 6 and 7; R is a linear salvage "
           "reward per node";
  return f;
}

}  // namespace fixtures_detail

inline std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (int c = 1; c <= 7; ++c) ids.push_back("table1.case" + std::to_string(c));
  for (int c = 1; c <= 7; ++c) ids.push_back("table1.case" + std::to_string(c) + ".L0");
  for (int c = 1; c <= 10; ++c) ids.push_back("serial.case" + std::to_string(c));
  for (int c = 1; c <= 5; ++c) ids.push_back("assembly1.case" + std::to_string(c));
  for (int c = 1; c <= 5; ++c) ids.push_back("assembly2.case" + std::to_string(c));
  ids.push_back("mixed.fig1");
  ids.push_back("complex.fig5");
  for (int c = 1; c <= 4; ++c) ids.push_back("complex.inst" + std::to_string(c));
  return ids;
}

inline Fixture fixture(const std::string& id) {
  namespace d = fixtures_detail;
  auto number_after = [](const std::string& s, const std::string& prefix, int lo, int hi) -> int {
    if (s.rfind(prefix, 0) != 0) return 0;
    const std::string rest = s.substr(prefix.size());
    if (rest.empty() || rest.size() > 2 || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return 0;
    const int c = std::stoi(rest);
    return (c >= lo && c <= hi) ? c : 0;
  };
  if (id.size() > 3 && id.compare(id.size() - 3, 3, ".L0") == 0) {
    if (int c = number_after(id.substr(0, id.size() - 3), "table1.case", 1, 7)) return d::table1(c, true);
    throw UnknownFixture(id);
  }
  if (int c = number_after(id, "table1.case", 1, 7)) return d::table1(c, false);
  if (int c = number_after(id, "serial.case", 1, 10)) return d::serial(c);
  if (int c = number_after(id, "assembly1.case", 1, 5)) return d::assembly(1, c);
  if (int c = number_after(id, "assembly2.case", 1, 5)) return d::assembly(2, c);
  if (int c = number_after(id, "complex.inst", 1, 4)) return d::complex_instance(c);
  if (id == "mixed.fig1") return d::mixed_fig1();
  if (id == "complex.fig5") return d::complex_fig5();
  throw UnknownFixture(id);
}

}  // namespace smeio

#endif  // SMEIO_FIXTURES_HPP
