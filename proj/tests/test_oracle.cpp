#include <gtest/gtest.h>

#include <cmath>

#include "smeio/smeio.hpp"

using namespace smeio;

TEST(Newsvendor, PublishedSingleNodeRows) {
  struct Row {
    double mu, sigma, oul, cost;
  };
  const Row rows[] = {{10, 1, 10.67, 12.71}, {10, 2, 11.35, 25.42}, {50, 1, 50.67, 12.71},  {50, 5, 53.37, 63.56},
                      {100, 1, 100.67, 12.71}, {100, 5, 103.37, 63.56}, {100, 10, 106.74, 127.11}};
  for (const auto& r : rows) {
    EXPECT_NEAR(newsvendor_oul(r.mu, r.sigma, 10, 30), r.oul, 0.01) << r.mu << "," << r.sigma;
    EXPECT_NEAR(newsvendor_cost(r.mu, r.sigma, 10, 30), r.cost, 0.01) << r.mu << "," << r.sigma;
  }
}

TEST(Newsvendor, ScalingAndSymmetry) {
  EXPECT_NEAR(newsvendor_cost(0, 3, 2, 5), 3 * newsvendor_cost(0, 1, 2, 5), 1e-12);
  EXPECT_NEAR(newsvendor_oul(7, 2, 1, 1), 7.0, 1e-12);
  // Swapping h and p mirrors the level about the mean and keeps the cost.
  EXPECT_NEAR(newsvendor_oul(20, 4, 3, 9) - 20, 20 - newsvendor_oul(20, 4, 9, 3), 1e-12);
  EXPECT_NEAR(newsvendor_cost(20, 4, 3, 9), newsvendor_cost(20, 4, 9, 3), 1e-12);
  EXPECT_THROW((void)newsvendor_oul(1, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW((void)newsvendor_cost(1, 1, -1, 1), std::invalid_argument);
}

TEST(Newsvendor, CostIsTheExpectedLossAtTheLevel) {
  // Trapezoid integration of h (S - x)^+ + p (x - S)^+ against the normal density.
  const double mu = 50, sigma = 5, h = 10, p = 30;
  const double s = newsvendor_oul(mu, sigma, h, p);
  double acc = 0.0;
  const int n = 200000;
  const double lo = mu - 12 * sigma, hi = mu + 12 * sigma, dx = (hi - lo) / n;
  for (int k = 0; k <= n; ++k) {
    const double x = lo + k * dx;
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    acc += w * dx * normal_pdf((x - mu) / sigma) / sigma * (h * std::max(s - x, 0.0) + p * std::max(x - s, 0.0));
  }
  EXPECT_NEAR(acc, newsvendor_cost(mu, sigma, h, p), 1e-6);
}

TEST(Newsvendor, QuantileInvertsTheCdf) {
  for (double u : {1e-12, 1e-6, 0.01, 0.02425, 0.3, 0.5, 0.75, 0.97575, 0.999, 1 - 1e-9}) {
    EXPECT_NEAR(normal_cdf(normal_quantile(u)), u, 1e-14 + 1e-12 * u) << u;
  }
  EXPECT_NEAR(normal_quantile(0.75), 0.6744897501960817, 1e-14);
  EXPECT_THROW((void)normal_quantile(0.0), std::domain_error);
  EXPECT_THROW((void)normal_quantile(1.0), std::domain_error);
}

TEST(Fixtures, ReferenceVectorsMatchTheLayout) {
  for (const auto& id : fixture_ids()) {
    const Fixture f = fixture(id);
    EXPECT_NE(f.find_reference(reference_method(id)), nullptr) << id;
    for (const auto& r : f.references) {
      if (!r.ouls.empty()) EXPECT_EQ(r.ouls.size(), f.instance.network.edge_count()) << id << " " << r.method;
    }
  }
}

TEST(Fixtures, SerialThreeStageLayout) {
  const Fixture f = fixture("serial.case3");
  EXPECT_EQ(decision_edges(f.instance.network), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(f.reference("analytical").ouls, (std::vector<double>{10.69, 5.53, 6.49}));
}

TEST(Fixtures, ZeroLeadTimeCostsNothing) {
  for (int c = 1; c <= 7; ++c) {
    const Fixture f = fixture("table1.case" + std::to_string(c) + ".L0");
    EXPECT_EQ(evaluate_policy(f.instance.network, f.reference("analytical").ouls, 2, 500, 0).mean, 0.0);
  }
}

// Published optimal and enumerated policies must evaluate to their published
// costs: this checks the cost model, not an optimizer.
TEST(Fixtures, ReferencePoliciesReproducePublishedCosts) {
  BenchConfig cfg;
  cfg.jobs = 1;
  for (const auto& id : fixture_ids()) {
    if (episodic_fixture(id) || id.find(".L0") != std::string::npos) continue;
    const Fixture f = fixture(id);
    for (const auto& r : f.references) {
      if (r.method != "analytical" && r.method != "enumeration" && r.method != "cd") continue;
      const double c = fixture_cost(f, r.ouls, cfg);
      EXPECT_NEAR(c, r.cost, 0.05 * r.cost) << id << " " << r.method;
    }
  }
}
