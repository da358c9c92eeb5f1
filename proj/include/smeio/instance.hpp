#ifndef SMEIO_INSTANCE_HPP
#define SMEIO_INSTANCE_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "smeio/cost_expr.hpp"
#include "smeio/network.hpp"
#include "smeio/stochastics.hpp"

namespace smeio {

/// Candidate distribution for random search: OUL_e = base_e + |N(0, sigma_e)|.
struct RandomSearchSpec {
  std::vector<double> base;   // decision-edge order
  std::vector<double> sigma;  // decision-edge order
};

struct Instance {
  std::string name;
  Network network;
  int horizon = 10;
  std::optional<RandomSearchSpec> random_search;
};

class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string path, const std::string& what)
      : std::runtime_error("at " + path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Values of `(from, to, value)` triples placed into decision-edge order.
inline std::vector<double> align_to_edges(const Network& net, const std::vector<std::tuple<int, int, double>>& rows) {
  if (rows.size() != net.edge_count()) {
    throw std::invalid_argument("align_to_edges: " + std::to_string(rows.size()) + " rows for " +
                                std::to_string(net.edge_count()) + " edges");
  }
  std::vector<double> out(net.edge_count(), 0.0);
  std::vector<bool> seen(net.edge_count(), false);
  for (const auto& [from, to, v] : rows) {
    const int e = net.edge_index(from, to);
    if (e < 0 || seen[static_cast<std::size_t>(e)]) {
      throw std::invalid_argument("align_to_edges: bad edge (" + std::to_string(from) + "," + std::to_string(to) + ")");
    }
    seen[static_cast<std::size_t>(e)] = true;
    out[static_cast<std::size_t>(e)] = v;
  }
  return out;
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw InstanceError(path + "." + key, "field is required");
  return *it;
}

inline long require_int(const nlohmann::json& j, const char* key, const std::string& path) {
  const auto& v = require(j, key, path);
  if (!v.is_number() || v.get<double>() != std::floor(v.get<double>())) {
    throw InstanceError(path + "." + key, "must be an integer");
  }
  return v.get<long>();
}

inline double require_number(const nlohmann::json& j, const char* key, const std::string& path) {
  const auto& v = require(j, key, path);
  if (!v.is_number() || !std::isfinite(v.get<double>())) throw InstanceError(path + "." + key, "must be a finite number");
  return v.get<double>();
}

inline NodeKind parse_kind(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) throw InstanceError(path, "must be a string");
  const auto s = j.get<std::string>();
  if (s == "plain") return NodeKind::plain;
  if (s == "assembly_and") return NodeKind::assembly_and;
  if (s == "assembly_or") return NodeKind::assembly_or;
  throw InstanceError(path, "unknown node kind '" + s + "'");
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& doc) {
  using detail::require;
  if (!doc.is_object()) throw InstanceError("$", "expected an object");
  if (doc.contains("format_version") && doc.at("format_version") != 1) {
    throw InstanceError("$.format_version", "unsupported format version");
  }
  Instance inst;
  if (doc.contains("name")) inst.name = doc.at("name").get<std::string>();
  inst.horizon = static_cast<int>(detail::require_int(doc, "horizon", "$"));
  if (inst.horizon <= 0) throw InstanceError("$.horizon", "must be positive");

  RawNetwork raw;
  const auto& nodes = require(doc, "nodes", "$");
  if (!nodes.is_array()) throw InstanceError("$.nodes", "must be an array");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string path = "$.nodes[" + std::to_string(k) + "]";
    const auto& jn = nodes[k];
    if (!jn.is_object()) throw InstanceError(path, "expected an object");
    NodeSpec n;
    n.id = static_cast<int>(detail::require_int(jn, "id", path));
    if (jn.contains("kind")) n.kind = detail::parse_kind(jn.at("kind"), path + ".kind");
    try {
      if (jn.contains("demand")) n.demand = demand_from_json(jn.at("demand"), path + ".demand");
      if (jn.contains("salvage")) n.salvage = parse_cost_expr(jn.at("salvage"), path + ".salvage");
    } catch (const DemandSpecError& e) {
      throw InstanceError(e.path(), e.what());
    } catch (const CostExprError& e) {
      throw InstanceError(e.path(), e.what());
    }
    raw.nodes.push_back(std::move(n));
  }

  const auto& edges = require(doc, "edges", "$");
  if (!edges.is_array()) throw InstanceError("$.edges", "must be an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "$.edges[" + std::to_string(k) + "]";
    const auto& je = edges[k];
    if (!je.is_object()) throw InstanceError(path, "expected an object");
    EdgeSpec e;
    e.from = static_cast<int>(detail::require_int(je, "from", path));
    e.to = static_cast<int>(detail::require_int(je, "to", path));
    e.lead_time = static_cast<int>(detail::require_int(je, "lead_time", path));
    try {
      e.holding = parse_cost_expr(require(je, "holding", path), path + ".holding");
      if (je.contains("stockout")) e.stockout = parse_cost_expr(je.at("stockout"), path + ".stockout");
    } catch (const CostExprError& err) {
      throw InstanceError(err.path(), err.what());
    }
    if (je.contains("init_level")) e.init_level = detail::require_number(je, "init_level", path);
    raw.edges.push_back(std::move(e));
  }
  inst.network = Network::validate(raw);

  if (doc.contains("random_search")) {
    const auto& rs = doc.at("random_search");
    if (!rs.is_array()) throw InstanceError("$.random_search", "must be an array");
    std::vector<std::tuple<int, int, double>> base, sigma;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      const std::string path = "$.random_search[" + std::to_string(k) + "]";
      const int from = static_cast<int>(detail::require_int(rs[k], "from", path));
      const int to = static_cast<int>(detail::require_int(rs[k], "to", path));
      if (inst.network.edge_index(from, to) < 0) throw InstanceError(path, "no such edge");
      base.emplace_back(from, to, detail::require_number(rs[k], "base", path));
      const double s = detail::require_number(rs[k], "sigma", path);
      if (s < 0.0) throw InstanceError(path + ".sigma", "must be nonnegative");
      sigma.emplace_back(from, to, s);
    }
    try {
      inst.random_search = RandomSearchSpec{align_to_edges(inst.network, base), align_to_edges(inst.network, sigma)};
    } catch (const std::invalid_argument& e) {
      throw InstanceError("$.random_search", "needs exactly one entry per edge");
    }
  }
  return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  using nlohmann::json;
  json doc;
  doc["format_version"] = 1;
  if (!inst.name.empty()) doc["name"] = inst.name;
  doc["horizon"] = inst.horizon;
  const RawNetwork raw = inst.network.to_raw();
  json nodes = json::array();
  for (const auto& n : raw.nodes) {
    json jn{{"id", n.id}, {"kind", to_string(n.kind)}};
    if (n.demand) jn["demand"] = demand_to_json(*n.demand);
    if (n.salvage) jn["salvage"] = n.salvage->to_json();
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (const auto& e : raw.edges) {
    json je{{"from", e.from}, {"to", e.to}, {"lead_time", e.lead_time}, {"holding", e.holding.to_json()},
            {"stockout", e.stockout.to_json()}};
    if (e.init_level) je["init_level"] = *e.init_level;
    edges.push_back(std::move(je));
  }
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  if (inst.random_search) {
    json rs = json::array();
    for (std::size_t e = 0; e < inst.network.edge_count(); ++e) {
      const Edge& ed = inst.network.edge_at(e);
      rs.push_back({{"from", ed.from}, {"to", ed.to}, {"base", inst.random_search->base[e]},
                    {"sigma", inst.random_search->sigma[e]}});
    }
    doc["random_search"] = std::move(rs);
  }
  return doc;
}

/// Parses instance text; syntax errors report line and column.
inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InstanceError("line " + std::to_string(line) + ", column " + std::to_string(col), "syntax error");
  }
  return instance_from_json(doc);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << instance_to_json(inst).dump(2) << '\n';
}

}  // namespace smeio

#endif  // SMEIO_INSTANCE_HPP
