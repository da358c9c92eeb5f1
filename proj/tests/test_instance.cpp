#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "smeio/smeio.hpp"

using namespace smeio;

namespace {

const char* kMinimal = R"({
  "format_version": 1,
  "horizon": 5,
  "nodes": [{"id": 1, "demand": {"dist": "normal", "mu": 10, "sigma": 2}}],
  "edges": [{"from": 0, "to": 1, "lead_time": 1, "holding": 1, "stockout": {"kind": "linear", "coef": 4}}]
})";

std::string error_of(const std::string& text) {
  try {
    (void)parse_instance(text);
  } catch (const InstanceError& e) {
    return e.path();
  } catch (const NetworkError& e) {
    return std::string("network:") + NetworkError::kind_name(e.kind());
  }
  return "";
}

std::string with(const std::string& from, const std::string& to) {
  std::string s = kMinimal;
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST(Instance, ParsesMinimalDocument) {
  const Instance inst = parse_instance(kMinimal);
  EXPECT_EQ(inst.horizon, 5);
  ASSERT_EQ(inst.network.edge_count(), 1u);
  EXPECT_EQ(inst.network.edge_at(0).holding, CostExpr::linear(1.0));
  EXPECT_EQ(inst.network.edge_at(0).stockout, CostExpr::linear(4.0));
  EXPECT_FALSE(inst.random_search.has_value());
}

TEST(Instance, SyntaxErrorsReportLineAndColumn) {
  const std::string text = "{\n  \"horizon\": 5,\n  \"nodes\": [,]\n}";
  EXPECT_EQ(error_of(text), "line 3, column 13");
}

TEST(Instance, FieldErrorsReportPath) {
  EXPECT_EQ(error_of(with("\"horizon\": 5", "\"horizon\": 0")), "$.horizon");
  EXPECT_EQ(error_of(with("\"horizon\": 5", "\"horizon\": 2.5")), "$.horizon");
  EXPECT_EQ(error_of(with("\"format_version\": 1", "\"format_version\": 2")), "$.format_version");
  EXPECT_EQ(error_of(with("\"sigma\": 2", "\"sigma\": 0")), "$.nodes[0].demand");
  EXPECT_EQ(error_of(with("\"coef\": 4", "\"coef\": \"nan\"")), "$.edges[0].stockout.coef");
  EXPECT_EQ(error_of(with("\"lead_time\": 1, ", "")), "$.edges[0].lead_time");
  EXPECT_EQ(error_of(with("\"id\": 1, ", "\"id\": 1, \"kind\": \"hub\", ")), "$.nodes[0].kind");
  EXPECT_EQ(error_of(with("\"lead_time\": 1", "\"lead_time\": -2")), "network:InvalidLeadTime");
}

TEST(Instance, RandomSearchBlock) {
  const std::string ok = with("\"format_version\": 1,", "\"format_version\": 1, \"random_search\": [{\"from\": 0, \"to\": 1, \"base\": 10, \"sigma\": 2}],");
  const Instance inst = parse_instance(ok);
  ASSERT_TRUE(inst.random_search.has_value());
  EXPECT_EQ(inst.random_search->base, std::vector<double>{10.0});
  const std::string bad = with("\"format_version\": 1,", "\"format_version\": 1, \"random_search\": [{\"from\": 0, \"to\": 2, \"base\": 10, \"sigma\": 2}],");
  EXPECT_EQ(error_of(bad), "$.random_search[0]");
  const std::string neg = with("\"format_version\": 1,", "\"format_version\": 1, \"random_search\": [{\"from\": 0, \"to\": 1, \"base\": 10, \"sigma\": -2}],");
  EXPECT_EQ(error_of(neg), "$.random_search[0].sigma");
}

TEST(Instance, FixturesRoundTripWithIdenticalCosts) {
  const auto dir = std::filesystem::temp_directory_path() / "smeio_roundtrip";
  std::filesystem::create_directories(dir);
  for (const auto& id : fixture_ids()) {
    const Fixture f = fixture(id);
    const auto path = (dir / (id + ".json")).string();
    save_instance(f.instance, path);
    const Instance back = load_instance(path);
    EXPECT_EQ(back.name, f.instance.name);
    EXPECT_EQ(back.horizon, f.instance.horizon);
    EXPECT_EQ(decision_edges(back.network), decision_edges(f.instance.network)) << id;
    EXPECT_EQ(back.random_search.has_value(), f.instance.random_search.has_value()) << id;
    const Environment a(f.instance.network, f.instance.horizon, 11, {}, 1);
    const Environment b(back.network, back.horizon, 11, {}, 1);
    const auto x = f.instance.network.lead_time_demand();
    for (std::uint64_t ep = 0; ep < 5; ++ep) {
      EXPECT_EQ(a.episode_cost(x, 0, ep), b.episode_cost(x, 0, ep)) << id << " episode " << ep;
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Instance, ExportedFixtureFilesMatchBuiltins) {
  // The checked-in fixture files are the exported built-ins.
  const std::filesystem::path dir = SMEIO_FIXTURE_DIR;
  for (const auto& id : fixture_ids()) {
    std::string file = id;
    for (char& c : file) {
      if (c == '.') c = '_';
    }
    const auto path = dir / (file + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(instance_to_json(load_instance(path.string())), instance_to_json(fixture(id).instance)) << id;
  }
}

TEST(Instance, MissingFile) { EXPECT_THROW((void)load_instance("/nonexistent/x.json"), std::runtime_error); }
