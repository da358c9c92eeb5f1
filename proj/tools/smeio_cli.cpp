// smeio: validate, simulate and optimize inventory networks.
//
// Exit codes: 0 success, 1 bad input (file, parse, validation, arguments),
// 2 failure while simulating or optimizing.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smeio/smeio.hpp"

namespace {

using namespace smeio;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Loads an instance file, or a built-in fixture written as "fixture:<id>".
Instance load(const std::string& path) {
  try {
    if (path.rfind("fixture:", 0) == 0) return fixture(path.substr(8)).instance;
    return load_instance(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<double> parse_ouls(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--ouls: '" + item + "' is not a number");
    }
  }
  return v;
}

std::string edge_name(const Edge& e) { return std::to_string(e.from) + "->" + std::to_string(e.to); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

int cmd_validate(const std::string& path) {
  const Instance inst = load(path);
  const Network& net = inst.network;
  std::cout << "instance " << (inst.name.empty() ? path : inst.name) << ": " << net.node_count() << " nodes, "
            << net.edge_count() << " decision edges, horizon " << inst.horizon << '\n';
  std::cout << "ordering:";
  for (int id : net.ordering()) std::cout << ' ' << id;
  std::cout << "\ndecision edges:";
  for (const auto& e : net.edges()) std::cout << ' ' << edge_name(e);
  std::cout << "\npriming levels:";
  const auto prime = priming_levels(net);
  for (std::size_t p = 0; p < net.node_count(); ++p) std::cout << ' ' << net.node_at(p).id << '=' << prime[p];
  std::cout << '\n';
  return 0;
}

struct SimulateArgs {
  std::string path, ouls, trace;
  int horizon = 10000, trials = 10, episodes = 1000, jobs = 0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  const Instance inst = load(a.path);
  const Network& net = inst.network;
  const auto ouls = parse_ouls(a.ouls);
  if (ouls.size() != net.edge_count()) throw InputError(DimensionMismatch(net.edge_count(), ouls.size()).what());
  EvalConfig cfg;
  cfg.trials = a.trials;
  cfg.horizon = a.horizon;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  const auto ev = evaluate_policy(net, ouls, cfg);
  const Environment env(net, inst.horizon, a.seed, {}, a.jobs);
  const double episodic = env.mean_cost(ouls, streams::evaluation, 0, a.episodes);
  std::cout << "long-run cost per period: " << ev.mean << " +- " << ev.std << " (" << a.trials << " trials x "
            << a.horizon << " periods)\n";
  std::cout << "episode cost per period: " << episodic << " (" << a.episodes << " episodes of " << inst.horizon
            << " periods, with initial levels and salvage)\n";
  std::cout << "episode cost total: " << episodic * inst.horizon << '\n';
  if (!a.trace.empty()) {
    std::vector<TraceRow> rows;
    RngStream rng = substream(a.seed, streams::evaluation, 0);
    run_episode(net, ouls, inst.horizon, rng, {}, &rows);
    auto out = open_out(a.trace);
    write_trace_csv(out, rows);
  }
  return 0;
}

struct OptimizeArgs {
  std::string path, method = "adam", trace, summary;
  std::uint64_t seed = 0;
  int jobs = 0;
  AgentConfig agent{};
  bool restarts = false;
  std::vector<int> hidden{8};
  int evaluations = 25, episodes_per = 2000, candidates = 100;
};

int cmd_optimize(const OptimizeArgs& a) {
  const Instance inst = load(a.path);
  const Network& net = inst.network;
  const Environment env(net, inst.horizon, a.seed, {}, a.jobs);
  OptimizerRun run;
  try {
    if (a.method == "adam") {
      run = a.restarts ? restart_loop(env, a.agent) : optimize_adam(env, a.agent);
    } else if (a.method == "mlp") {
      run = optimize_mlp(env, MlpConfig{a.agent, a.hidden});
    } else if (a.method == "dfo") {
      run = optimize_dfo_tr(env, a.evaluations, a.episodes_per);
    } else if (a.method == "cd") {
      run = optimize_coordinate_descent(env);
    } else if (a.method == "enum") {
      run = optimize_enumeration(env);
    } else {
      run = optimize_random_search(env, inst.random_search.value_or(default_random_spec(net)), a.candidates,
                                   a.episodes_per);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::cout << "method " << run.method << ", best cost " << run.best_cost << ", interactions " << run.interactions
            << '\n';
  for (std::size_t e = 0; e < run.best_ouls.size(); ++e) {
    std::cout << "  " << edge_name(net.edge_at(e)) << ' ' << run.best_ouls[e] << '\n';
  }
  if (!a.trace.empty()) {
    auto out = open_out(a.trace);
    write_run_trace_csv(out, run, net);
  }
  if (!a.summary.empty()) {
    auto out = open_out(a.summary);
    out << run_summary_json(run, net, a.seed).dump(2) << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string set, methods, out;
  BenchConfig cfg{};
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::string> ids;
  if (!a.set.empty()) {
    ids = fixture_set(a.set);
    if (ids.empty()) throw InputError("no fixtures match '" + a.set + "'");
  }
  std::vector<std::string> methods;
  std::stringstream ss(a.methods);
  for (std::string m; std::getline(ss, m, ',');) {
    if (!m.empty()) methods.push_back(m);
  }
  const auto rows = run_bench(ids, methods, a.cfg);
  write_bench_markdown(std::cout, rows);
  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    auto csv = open_out(a.out + "/bench.csv");
    write_bench_csv(csv, rows);
    auto md = open_out(a.out + "/bench.md");
    write_bench_markdown(md, rows);
  }
  return 0;
}

int cmd_export(const std::string& which, const std::string& dir) {
  std::vector<std::string> ids = which == "all" ? fixture_ids() : std::vector<std::string>{which};
  std::filesystem::create_directories(dir);
  for (const auto& id : ids) {
    Fixture f;
    try {
      f = fixture(id);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    std::string file = id;
    for (char& c : file) {
      if (c == '.') c = '_';
    }
    save_instance(f.instance, dir + "/" + file + ".json");
    std::cout << dir << "/" << file << ".json\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-up-to level optimization for multi-echelon inventory networks"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an instance and print its structure");
  validate->add_option("path", validate_path, "Instance file or fixture:<id>")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Evaluate fixed order-up-to levels");
  simulate->add_option("path", sim.path, "Instance file or fixture:<id>")->required();
  simulate->add_option("--ouls", sim.ouls, "Comma-separated levels in decision-edge order")->required();
  simulate->add_option("--horizon", sim.horizon, "Periods per long-run trial")->capture_default_str();
  simulate->add_option("--trials", sim.trials, "Long-run trials")->capture_default_str();
  simulate->add_option("--episodes", sim.episodes, "Finite episodes for the episode cost")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--jobs", sim.jobs, "Worker threads (0: all cores)")->capture_default_str();
  simulate->add_option("--trace", sim.trace, "Write a per-period trace of one episode as CSV");

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Search for order-up-to levels");
  optimize->add_option("path", opt.path, "Instance file or fixture:<id>")->required();
  optimize->add_option("--method", opt.method, "adam, mlp, dfo, cd, enum or random")
      ->check(CLI::IsMember({"adam", "mlp", "dfo", "cd", "enum", "random"}))
      ->capture_default_str();
  optimize->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  optimize->add_option("--jobs", opt.jobs, "Worker threads (0: all cores)")->capture_default_str();
  optimize->add_option("--episodes", opt.agent.episodes, "Training episodes (adam, mlp)")->capture_default_str();
  optimize->add_option("--batch", opt.agent.batch_size, "Episodes per gradient step")->capture_default_str();
  optimize->add_option("--lr", opt.agent.learning_rate, "Adam learning rate")->capture_default_str();
  optimize->add_option("--checkpoint-every", opt.agent.checkpoint_every, "Training episodes between tests")
      ->capture_default_str();
  optimize->add_option("--test-episodes", opt.agent.test_episodes, "Episodes per test")->capture_default_str();
  optimize->add_flag("--restarts", opt.restarts, "Restart training from the best levels (adam)");
  optimize->add_option("--max-rounds", opt.agent.max_rounds, "Restart rounds")->capture_default_str();
  optimize->add_option("--hidden", opt.hidden, "Hidden layer widths (mlp)")->capture_default_str();
  optimize->add_option("--evaluations", opt.evaluations, "Function evaluations (dfo)")->capture_default_str();
  optimize->add_option("--episodes-per", opt.episodes_per, "Episodes per evaluation (dfo, random)")
      ->capture_default_str();
  optimize->add_option("--candidates", opt.candidates, "Random candidates (random)")->capture_default_str();
  optimize->add_option("--trace", opt.trace, "Convergence trace CSV");
  optimize->add_option("--summary", opt.summary, "Summary JSON");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare methods against published references");
  bench_cmd->add_option("set", bench.set, "all, a family (table1, serial, assembly, mixed, complex) or a fixture id");
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods (default: per family)");
  bench_cmd->add_option("--out", bench.out, "Directory for bench.csv and bench.md");
  bench_cmd->add_option("--seed", bench.cfg.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--jobs", bench.cfg.jobs, "Worker threads (0: all cores)")->capture_default_str();
  bench_cmd->add_option("--episodes", bench.cfg.agent.episodes, "Adam training episodes")->capture_default_str();
  bench_cmd->add_option("--eval-horizon", bench.cfg.eval_horizon, "Periods per long-run scoring trial")
      ->capture_default_str();

  std::string export_id = "all", export_dir = "fixtures";
  auto* exporter = app.add_subcommand("export-fixture", "Write built-in fixtures as instance files");
  exporter->add_option("id", export_id, "Fixture id or all")->capture_default_str();
  exporter->add_option("--out", export_dir, "Output directory")->capture_default_str();

  auto* lister = app.add_subcommand("list-fixtures", "Print the built-in fixture ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*simulate) return cmd_simulate(sim);
    if (*optimize) return cmd_optimize(opt);
    if (*bench_cmd) return cmd_bench(bench);
    if (*exporter) return cmd_export(export_id, export_dir);
    if (*lister) {
      for (const auto& id : fixture_ids()) std::cout << id << '\n';
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
