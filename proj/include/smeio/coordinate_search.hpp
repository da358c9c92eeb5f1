#ifndef SMEIO_COORDINATE_SEARCH_HPP
#define SMEIO_COORDINATE_SEARCH_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "smeio/environment.hpp"
#include "smeio/optimizer_run.hpp"

namespace smeio {

class GridTooLarge : public std::runtime_error {
 public:
  GridTooLarge(std::size_t groups, std::size_t cap)
      : std::runtime_error("GridTooLarge: " + std::to_string(groups) + " coordinates exceed the cap of " +
                           std::to_string(cap)) {}
};

struct GridSearchConfig {
  bool tie_echelons = true;
  double lower = 0.75;  // multiples of the lead-time demand
  double upper = 2.0;
  int points = 10;          // enumeration grid points per coordinate
  std::size_t max_coordinates = 6;
  int trials = 3;           // scoring: trials x horizon periods
  int horizon = 200;
  double cycle_tolerance = 0.005;
  int max_cycles = 50;
  double line_tolerance = 1e-3;  // golden-section bracket width in unit coordinates
};

/// Decision edges grouped into search coordinates. With tying, edges whose
/// downstream nodes share an echelon move together.
inline std::vector<std::vector<std::size_t>> search_groups(const Network& net, bool tie) {
  std::vector<std::vector<std::size_t>> groups;
  if (!tie) {
    for (std::size_t e = 0; e < net.edge_count(); ++e) groups.push_back({e});
    return groups;
  }
  std::map<int, std::vector<std::size_t>> by_echelon;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    by_echelon[net.node_at(static_cast<std::size_t>(net.edge_at(e).to_pos)).echelon].push_back(e);
  }
  for (auto& [_, g] : by_echelon) groups.push_back(std::move(g));
  return groups;
}

namespace detail {

/// Maps unit coordinates u (one per group) to OULs: x_e = D_e (lo + (hi - lo) u).
class UnitBox {
 public:
  UnitBox(const Network& net, const GridSearchConfig& cfg)
      : groups_(search_groups(net, cfg.tie_echelons)), d_(net.lead_time_demand()), lo_(cfg.lower), hi_(cfg.upper) {}

  std::size_t size() const { return groups_.size(); }

  std::vector<double> ouls(const std::vector<double>& u) const {
    std::vector<double> x(d_.size(), 0.0);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (std::size_t e : groups_[g]) x[e] = d_[e] * (lo_ + (hi_ - lo_) * u[g]);
    }
    return x;
  }

 private:
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<double> d_;
  double lo_, hi_;
};

inline double score(const Environment& env, const std::vector<double>& x, const GridSearchConfig& cfg) {
  return env.steady_state(x, cfg.trials, cfg.horizon, streams::line_search, 0).mean;
}

}  // namespace detail

/// Full grid over the search coordinates, every point scored on the same
/// trials.
inline OptimizerRun optimize_enumeration(const Environment& env, const GridSearchConfig& cfg = {}) {
  const detail::UnitBox box(env.network(), cfg);
  if (box.size() > cfg.max_coordinates) throw GridTooLarge(box.size(), cfg.max_coordinates);
  if (cfg.points < 1) throw std::invalid_argument("enumeration needs at least one point per coordinate");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  OptimizerRun run;
  run.method = "enumeration";
  std::vector<int> idx(box.size(), 0);
  std::vector<double> u(box.size(), 0.0);
  const double step = cfg.points > 1 ? 1.0 / (cfg.points - 1) : 0.0;
  while (true) {
    for (std::size_t g = 0; g < u.size(); ++g) u[g] = idx[g] * step;
    auto x = box.ouls(u);
    const double c = detail::score(env, x, cfg);
    run.record(env.interactions() - start, std::move(x), c);
    std::size_t g = 0;
    for (; g < idx.size(); ++g) {
      if (++idx[g] < cfg.points) break;
      idx[g] = 0;
    }
    if (g == idx.size()) break;
  }
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Cyclic coordinate descent with a golden-section line search per
/// coordinate, starting from the lead-time demand.
inline OptimizerRun optimize_coordinate_descent(const Environment& env, const GridSearchConfig& cfg = {}) {
  const detail::UnitBox box(env.network(), cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  OptimizerRun run;
  run.method = "coordinate_descent";
  auto eval = [&](const std::vector<double>& u) {
    auto x = box.ouls(u);
    const double c = detail::score(env, x, cfg);
    run.record(env.interactions() - start, std::move(x), c);
    return c;
  };
  std::vector<double> u(box.size(), (1.0 - cfg.lower) / (cfg.upper - cfg.lower));
  double current = eval(u);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int cycle = 0; cycle < cfg.max_cycles; ++cycle) {
    const double before = current;
    for (std::size_t g = 0; g < u.size(); ++g) {
      auto at = [&](double v) {
        auto w = u;
        w[g] = v;
        return eval(w);
      };
      double a = 0.0, b = 1.0;
      double c = b - phi * (b - a), d = a + phi * (b - a);
      double fc = at(c), fd = at(d);
      while (b - a > cfg.line_tolerance) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - phi * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + phi * (b - a);
          fd = at(d);
        }
      }
      const double v = fc < fd ? c : d;
      const double fv = std::min(fc, fd);
      if (fv < current) {
        u[g] = v;
        current = fv;
      }
    }
    if (before - current < cfg.cycle_tolerance * std::abs(before)) break;
  }
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace smeio

#endif  // SMEIO_COORDINATE_SEARCH_HPP
