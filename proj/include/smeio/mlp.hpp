#ifndef SMEIO_MLP_HPP
#define SMEIO_MLP_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "smeio/adam.hpp"
#include "smeio/environment.hpp"
#include "smeio/optimizer_run.hpp"

namespace smeio {

inline double softplus(double z) { return z > 30.0 ? z : std::log1p(std::exp(z)); }
inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Fully connected network with softplus hidden layers and a linear output.
/// Its input is the constant 1, so the output is a single OUL vector.
class Mlp {
 public:
  Mlp(std::vector<int> hidden, std::size_t outputs, const std::vector<double>& output_bias, std::uint64_t seed) {
    std::vector<std::size_t> sizes{1};
    for (int h : hidden) sizes.push_back(static_cast<std::size_t>(h));
    sizes.push_back(outputs);
    RngStream rng = substream(seed, 0, 0);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      Layer layer{sizes[l], sizes[l + 1], {}, {}};
      const double scale = std::sqrt(1.0 / static_cast<double>(sizes[l]));
      layer.w.resize(layer.in * layer.out);
      for (double& w : layer.w) w = scale * rng.standard_normal();
      layer.b.assign(layer.out, 0.0);
      layers_.push_back(std::move(layer));
    }
    // Start at the requested OULs: the output layer's weights are scaled down
    // and its bias absorbs the rest.
    Layer& last = layers_.back();
    for (double& w : last.w) w *= 0.01;
    const auto y = forward();
    for (std::size_t k = 0; k < outputs; ++k) last.b[k] = output_bias[k] - (y.back()[k] - last.b[k]);
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.w.size() + l.b.size();
    return n;
  }

  std::vector<double> parameters() const {
    std::vector<double> p;
    for (const auto& l : layers_) {
      p.insert(p.end(), l.w.begin(), l.w.end());
      p.insert(p.end(), l.b.begin(), l.b.end());
    }
    return p;
  }

  void set_parameters(const std::vector<double>& p) {
    std::size_t k = 0;
    for (auto& l : layers_) {
      for (double& w : l.w) w = p[k++];
      for (double& b : l.b) b = p[k++];
    }
  }

  std::vector<double> output() const { return forward().back(); }

  /// Gradient of sum_k dc_dy[k] * y_k with respect to the parameters.
  std::vector<double> backprop(const std::vector<double>& dc_dy) const {
    const auto acts = forward();
    std::vector<double> grad(parameter_count(), 0.0);
    std::vector<double> delta = dc_dy;  // derivative w.r.t. the current layer's pre-activation
    std::size_t offset = grad.size();
    for (std::size_t li = layers_.size(); li-- > 0;) {
      const Layer& l = layers_[li];
      const auto& in = acts[li];
      offset -= l.w.size() + l.b.size();
      for (std::size_t o = 0; o < l.out; ++o) {
        for (std::size_t i = 0; i < l.in; ++i) grad[offset + o * l.in + i] = delta[o] * in[i];
        grad[offset + l.w.size() + o] = delta[o];
      }
      if (li == 0) break;
      std::vector<double> prev(l.in, 0.0);
      const auto& pre = pre_[li - 1];
      for (std::size_t i = 0; i < l.in; ++i) {
        double s = 0.0;
        for (std::size_t o = 0; o < l.out; ++o) s += l.w[o * l.in + i] * delta[o];
        prev[i] = s * sigmoid(pre[i]);
      }
      delta = std::move(prev);
    }
    return grad;
  }

 private:
  struct Layer {
    std::size_t in, out;
    std::vector<double> w;  // row-major out x in
    std::vector<double> b;
  };

  std::vector<std::vector<double>> forward() const {
    std::vector<std::vector<double>> acts{{1.0}};
    pre_.clear();
    for (std::size_t li = 0; li < layers_.size(); ++li) {
      const Layer& l = layers_[li];
      std::vector<double> z(l.out);
      for (std::size_t o = 0; o < l.out; ++o) {
        double s = l.b[o];
        for (std::size_t i = 0; i < l.in; ++i) s += l.w[o * l.in + i] * acts.back()[i];
        z[o] = s;
      }
      if (li + 1 < layers_.size()) {
        pre_.push_back(z);
        for (double& v : z) v = softplus(v);
      }
      acts.push_back(std::move(z));
    }
    return acts;
  }

  std::vector<Layer> layers_;
  mutable std::vector<std::vector<double>> pre_;
};

struct MlpConfig {
  AgentConfig agent;
  std::vector<int> hidden{8};
};

/// Gradient agent with an MLP producing the OULs. The cost gradient with
/// respect to the OULs comes from the simulator and is chained through the
/// network.
inline OptimizerRun optimize_mlp(const Environment& env, const MlpConfig& cfg, std::uint64_t round = 0) {
  const AgentConfig& a = cfg.agent;
  a.check();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  const std::vector<double> init = a.init ? *a.init : default_start(env.network());
  if (init.size() != env.dim()) throw DimensionMismatch(env.dim(), init.size());
  Mlp net(cfg.hidden, env.dim(), init, env.seed() ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> w = net.parameters();
  AdamState adam(w.size(), a.learning_rate, a.beta1, a.beta2, a.epsilon);
  OptimizerRun run;
  run.method = "mlp";
  const std::uint64_t trial = streams::training + round;
  for (int done = 0; done < a.episodes;) {
    const int b = std::min(a.batch_size, a.episodes - done);
    const auto ouls = net.output();
    const GradResult g = env.mean_gradient(ouls, trial, static_cast<std::uint64_t>(done), b);
    if (!std::isfinite(g.cost) || !detail::all_finite(g.gradient)) throw NonFiniteCost(ouls);
    adam.step(w, net.backprop(g.gradient));
    if (!detail::all_finite(w)) throw NonFiniteCost(ouls);
    net.set_parameters(w);
    done += b;
    if (done % a.checkpoint_every == 0 || done == a.episodes) {
      auto y = net.output();
      const double c = env.mean_cost(y, streams::test + round, 0, a.test_episodes);
      if (!std::isfinite(c)) throw NonFiniteCost(y);
      run.record(env.interactions() - start, std::move(y), c);
    }
  }
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace smeio

#endif  // SMEIO_MLP_HPP
