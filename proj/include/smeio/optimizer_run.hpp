#ifndef SMEIO_OPTIMIZER_RUN_HPP
#define SMEIO_OPTIMIZER_RUN_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "smeio/network.hpp"

namespace smeio {

struct Checkpoint {
  std::uint64_t episodes = 0;  // environment interactions consumed so far
  std::vector<double> ouls;
  double cost = 0.0;
};

struct OptimizerRun {
  std::string method;
  std::vector<Checkpoint> trace;
  std::vector<double> best_ouls;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t interactions = 0;
  std::vector<double> round_best;  // restart rounds only
  double wall_seconds = 0.0;

  /// Appends a checkpoint and keeps the best one.
  void record(std::uint64_t episodes, std::vector<double> ouls, double cost) {
    if (cost < best_cost) {
      best_cost = cost;
      best_ouls = ouls;
    }
    trace.push_back(Checkpoint{episodes, std::move(ouls), cost});
  }
};

/// Raised when training produces a non-finite cost or gradient.
class NonFiniteCost : public std::runtime_error {
 public:
  explicit NonFiniteCost(std::vector<double> theta)
      : std::runtime_error("NonFiniteCost: training diverged"), theta_(std::move(theta)) {}
  const std::vector<double>& theta() const { return theta_; }

 private:
  std::vector<double> theta_;
};

inline void write_run_trace_csv(std::ostream& os, const OptimizerRun& run, const Network& net) {
  os << "episodes,test_cost";
  for (const auto& e : net.edges()) os << ",oul_" << e.from << '_' << e.to;
  os << '\n';
  os.precision(10);
  for (const auto& c : run.trace) {
    os << c.episodes << ',' << c.cost;
    for (double v : c.ouls) os << ',' << v;
    os << '\n';
  }
}

inline nlohmann::json run_summary_json(const OptimizerRun& run, const Network& net, std::uint64_t seed) {
  nlohmann::json ouls = nlohmann::json::object();
  for (std::size_t e = 0; e < run.best_ouls.size(); ++e) {
    ouls[std::to_string(net.edge_at(e).from) + "->" + std::to_string(net.edge_at(e).to)] = run.best_ouls[e];
  }
  nlohmann::json j{{"method", run.method},
                   {"best_ouls", ouls},
                   {"best_cost", run.best_cost},
                   {"interactions", run.interactions},
                   {"seed", seed},
                   {"wall_seconds", run.wall_seconds}};
  if (!run.round_best.empty()) j["round_best"] = run.round_best;
  return j;
}

}  // namespace smeio

#endif  // SMEIO_OPTIMIZER_RUN_HPP
