#ifndef SMEIO_REPORT_HPP
#define SMEIO_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "smeio/adam.hpp"
#include "smeio/coordinate_search.hpp"
#include "smeio/dfo_tr.hpp"
#include "smeio/environment.hpp"
#include "smeio/fixtures.hpp"
#include "smeio/mlp.hpp"
#include "smeio/random_search.hpp"

namespace smeio {

struct BenchConfig {
  std::uint64_t seed = 0;
  int jobs = 0;
  int eval_trials = 10;       // long-run scoring for single-node, serial and assembly fixtures
  int eval_horizon = 10000;
  int eval_episodes = 10000;  // episode scoring for mixed and complex fixtures
  AgentConfig agent{};
  int dfo_evaluations = 25;
  int dfo_episodes = 2000;
  int random_candidates = 0;  // 0: 100 for mixed, 400 for complex, 50 otherwise
  int random_episodes = 0;    // 0: 2000 for mixed, 5000 for complex, 500 otherwise
};

struct BenchRow {
  std::string fixture;
  std::string method;
  double cost = std::numeric_limits<double>::quiet_NaN();
  std::string reference_method;
  double reference = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t interactions = 0;
  std::string error;

  /// (cost - reference) / reference, or the plain difference for a zero reference.
  double gap() const { return reference == 0.0 ? cost - reference : (cost - reference) / reference; }
};

/// True for fixtures scored by finite episodes from their own initial levels.
inline bool episodic_fixture(const std::string& id) {
  return id.rfind("mixed", 0) == 0 || id.rfind("complex", 0) == 0;
}

/// Fixture ids selected by "all", a family prefix such as "serial", or one id.
inline std::vector<std::string> fixture_set(const std::string& name) {
  std::vector<std::string> out;
  for (const auto& id : fixture_ids()) {
    if (name == "all" || id == name || id.rfind(name + ".", 0) == 0 ||
        (name == "assembly" && id.rfind("assembly", 0) == 0)) {
      out.push_back(id);
    }
  }
  return out;
}

inline std::vector<std::string> default_methods(const std::string& id) {
  if (id.rfind("serial", 0) == 0) return {"adam", "dfo"};
  if (id.rfind("assembly", 0) == 0) return {"adam", "cd", "enum"};
  if (id.rfind("mixed", 0) == 0) return {"adam", "dfo", "random"};
  if (id.rfind("complex", 0) == 0) return {"adam", "random"};
  return {"adam"};
}

inline std::string reference_method(const std::string& id) {
  if (id.rfind("assembly", 0) == 0) return "enumeration";
  if (episodic_fixture(id)) return "dnn";
  return "analytical";
}

/// Cost of `ouls` on a fixture, on the scale its reference table uses.
inline double fixture_cost(const Fixture& f, std::span<const double> ouls, const BenchConfig& cfg) {
  const Network& net = f.instance.network;
  if (episodic_fixture(f.id)) {
    const Environment env(net, f.instance.horizon, cfg.seed, {}, cfg.jobs);
    return env.mean_cost(ouls, streams::evaluation, 0, cfg.eval_episodes);
  }
  EvalConfig ec;
  ec.trials = cfg.eval_trials;
  ec.horizon = cfg.eval_horizon;
  ec.seed = cfg.seed;
  ec.jobs = cfg.jobs;
  return evaluate_policy(net, ouls, ec).mean;
}

/// Runs one method on one fixture. Methods: adam (with restarts on episodic
/// fixtures), mlp, dfo, cd, enum, random, reference.
inline OptimizerRun run_method(const Fixture& f, const std::string& method, const BenchConfig& cfg) {
  const Environment env(f.instance.network, f.instance.horizon, cfg.seed, {}, cfg.jobs);
  if (method == "adam") return episodic_fixture(f.id) ? restart_loop(env, cfg.agent) : optimize_adam(env, cfg.agent);
  if (method == "mlp") return optimize_mlp(env, MlpConfig{cfg.agent, {8}});
  if (method == "dfo") return optimize_dfo_tr(env, cfg.dfo_evaluations, cfg.dfo_episodes);
  if (method == "cd") return optimize_coordinate_descent(env);
  if (method == "enum") return optimize_enumeration(env);
  if (method == "random") {
    const bool mixed = f.id.rfind("mixed", 0) == 0, complex = f.id.rfind("complex", 0) == 0;
    const int n = cfg.random_candidates > 0 ? cfg.random_candidates : (mixed ? 100 : complex ? 400 : 50);
    const int per = cfg.random_episodes > 0 ? cfg.random_episodes : (mixed ? 2000 : complex ? 5000 : 500);
    return optimize_random_search(env, f.instance.random_search.value_or(default_random_spec(f.instance.network)), n,
                                  per);
  }
  if (method == "reference") {
    OptimizerRun run;
    run.method = "reference";
    const auto& ref = f.reference(reference_method(f.id));
    if (ref.ouls.empty()) throw std::invalid_argument("no published OULs for " + f.id);
    run.record(0, ref.ouls, 0.0);
    return run;
  }
  throw std::invalid_argument("unknown method '" + method + "'");
}

/// Runs methods on fixtures and rescores each best OUL vector on the
/// fixture's reference scale. Failures are recorded and skipped.
inline std::vector<BenchRow> run_bench(const std::vector<std::string>& ids, const std::vector<std::string>& methods,
                                       const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (const auto& id : ids) {
    const Fixture f = fixture(id);
    for (const auto& m : methods.empty() ? default_methods(id) : methods) {
      BenchRow row;
      row.fixture = id;
      row.method = m;
      row.reference_method = reference_method(id);
      if (const auto* r = f.find_reference(row.reference_method)) row.reference = r->cost;
      try {
        const OptimizerRun run = run_method(f, m, cfg);
        row.interactions = run.interactions;
        row.cost = fixture_cost(f, run.best_ouls, cfg);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "fixture,method,cost,reference_method,reference_cost,relative_gap,interactions,error\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.fixture << ',' << r.method << ',' << r.cost << ',' << r.reference_method << ',' << r.reference << ','
       << r.gap() << ',' << r.interactions << ",\"" << r.error << "\"\n";
  }
}

inline void write_bench_markdown(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "| fixture | method | cost | reference | gap | interactions |\n";
  os << "|---|---|---:|---:|---:|---:|\n";
  os << std::fixed;
  for (const auto& r : rows) {
    os << "| " << r.fixture << " | " << r.method << " | ";
    if (r.error.empty()) {
      os << std::setprecision(2) << r.cost;
    } else {
      os << "error: " << r.error;
    }
    os << " | " << std::setprecision(2) << r.reference << " (" << r.reference_method << ") | " << std::setprecision(2)
       << 100.0 * r.gap() << "% | " << r.interactions << " |\n";
  }
  os.unsetf(std::ios::fixed);
}

}  // namespace smeio

#endif  // SMEIO_REPORT_HPP
