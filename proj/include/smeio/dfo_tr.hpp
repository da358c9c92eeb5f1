#ifndef SMEIO_DFO_TR_HPP
#define SMEIO_DFO_TR_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "smeio/environment.hpp"
#include "smeio/optimizer_run.hpp"

namespace smeio {

struct DfoConfig {
  int max_evaluations = 100;
  double initial_radius = 0.0;  // 0: 10% of the largest |x0| component, at least 0.1
  double eta_low = 0.1;
  double eta_high = 0.75;
  double shrink = 0.5;
  double grow = 2.0;
  double min_radius = 1e-8;
  int max_stall_steps = 100;       // steps without a new best
  int improvement_window = 10;     // stop when this many consecutive improvements
  double small_improvement = 0.005;  // are each below this fraction
};

struct DfoResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int rebuilds = 0;  // degenerate interpolation sets rebuilt from scratch
  std::vector<std::pair<std::vector<double>, double>> history;
};

namespace dfo_detail {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Model {
  Vec g;
  Mat h;
};

/// Minimum Frobenius norm quadratic through the points (offsets from the
/// center). Returns false when the interpolation system is singular.
inline bool fit_model(const std::vector<Vec>& s, const std::vector<double>& f, double f0, Model& out) {
  const auto n = s.front().size();
  const auto p = static_cast<Eigen::Index>(s.size());
  const Eigen::Index nq = n * (n + 1) / 2;
  // Quadratic basis: s_i^2 / 2 on the diagonal and s_i s_j off it; a weight
  // of 2 on the off-diagonal terms turns the coefficient norm into ||H||_F.
  Mat mq(p, nq), ml(p, n + 1);
  Vec w(nq);
  for (Eigen::Index r = 0; r < p; ++r) {
    const Vec& v = s[static_cast<std::size_t>(r)];
    ml(r, 0) = 1.0;
    ml.row(r).tail(n) = v.transpose();
    Eigen::Index q = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j, ++q) {
        mq(r, q) = i == j ? 0.5 * v(i) * v(i) : v(i) * v(j);
        w(q) = i == j ? 1.0 : 2.0;
      }
    }
  }
  const Vec winv = w.cwiseInverse();
  Mat kkt = Mat::Zero(p + n + 1, p + n + 1);
  kkt.topLeftCorner(p, p) = mq * winv.asDiagonal() * mq.transpose();
  kkt.topRightCorner(p, n + 1) = ml;
  kkt.bottomLeftCorner(n + 1, p) = ml.transpose();
  Vec rhs = Vec::Zero(p + n + 1);
  for (Eigen::Index r = 0; r < p; ++r) rhs(r) = f[static_cast<std::size_t>(r)] - f0;
  Eigen::FullPivLU<Mat> lu(kkt);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return false;
  const Vec sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  const Vec alpha_q = winv.asDiagonal() * (mq.transpose() * sol.head(p));
  out.g = sol.segment(p + 1, n);
  out.h = Mat::Zero(n, n);
  Eigen::Index q = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j, ++q) {
      out.h(i, j) = alpha_q(q);
      out.h(j, i) = alpha_q(q);
    }
  }
  return true;
}

/// Minimizes g's + s'Hs/2 over ||s|| <= radius via the eigendecomposition
/// of H and bisection on the multiplier.
inline Vec trust_region_step(const Vec& g, const Mat& h, double radius) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Vec lam = es.eigenvalues();
  const Mat& q = es.eigenvectors();
  const Vec gq = q.transpose() * g;
  auto step = [&](double mu) {
    Vec c(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double d = lam(i) + mu;
      c(i) = d > 0.0 ? -gq(i) / d : 0.0;
    }
    return c;
  };
  const double lmin = lam.minCoeff();
  const double tiny = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  if (lmin > tiny) {
    const Vec c = step(0.0);
    if (c.norm() <= radius) return q * c;
  }
  const double lo0 = std::max(0.0, -lmin);
  Vec c_lo = step(lo0 + tiny);
  if (c_lo.norm() < radius) {
    // Hard case: move along the lowest eigenvector to reach the boundary.
    Eigen::Index k;
    lam.minCoeff(&k);
    Vec c = step(lo0 + tiny);
    c(k) = 0.0;
    const double rest = std::sqrt(std::max(0.0, radius * radius - c.squaredNorm()));
    c(k) = gq(k) > 0.0 ? -rest : rest;
    return q * c;
  }
  double lo = lo0 + tiny;
  double hi = lo0 + g.norm() / radius + lam.cwiseAbs().maxCoeff() + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (step(mid).norm() > radius ? lo : hi) = mid;
  }
  return q * step(hi);
}

}  // namespace dfo_detail

/// Model-based trust-region minimization of a black-box objective.
inline DfoResult minimize_dfo_tr(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                                 const DfoConfig& cfg = {}) {
  using dfo_detail::Mat;
  using dfo_detail::Vec;
  if (x0.empty()) throw std::invalid_argument("DFO-TR needs at least one variable");
  if (cfg.max_evaluations <= 0) throw std::invalid_argument("DFO-TR needs a positive evaluation budget");
  const auto n = static_cast<Eigen::Index>(x0.size());
  const std::size_t max_points = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
  DfoResult res;

  std::vector<Vec> pts;
  std::vector<double> vals;
  auto evaluate = [&](const Vec& x) {
    std::vector<double> xv(x.data(), x.data() + x.size());
    const double v = f(xv);
    ++res.evaluations;
    res.history.emplace_back(xv, v);
    if (v < res.f) {
      res.f = v;
      res.x = xv;
    }
    return v;
  };
  auto budget_left = [&] { return res.evaluations < cfg.max_evaluations; };

  double radius = cfg.initial_radius;
  if (!(radius > 0.0)) {
    double m = 0.0;
    for (double v : x0) m = std::max(m, std::abs(v));
    radius = std::max(0.1 * m, 0.1);
  }

  Vec center = Eigen::Map<const Vec>(x0.data(), n);
  double fc = evaluate(center);
  auto build_set = [&] {
    pts.assign(1, center);
    vals.assign(1, fc);
    for (Eigen::Index i = 0; i < n && budget_left(); ++i) {
      for (double sign : {1.0, -1.0}) {
        if (!budget_left()) break;
        Vec x = center;
        x(i) += sign * radius;
        pts.push_back(x);
        vals.push_back(evaluate(x));
      }
    }
  };
  build_set();

  int stall = 0;
  std::deque<double> improvements;
  while (budget_left() && radius > cfg.min_radius && stall < cfg.max_stall_steps) {
    // Recenter on the best point in the set.
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    center = pts[best];
    fc = vals[best];
    std::vector<Vec> s;
    std::vector<double> fs;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      s.push_back(pts[k] - center);
      fs.push_back(vals[k]);
    }
    dfo_detail::Model model;
    if (!dfo_detail::fit_model(s, fs, fc, model)) {
      ++res.rebuilds;
      build_set();
      continue;
    }
    const Vec step = dfo_detail::trust_region_step(model.g, model.h, radius);
    const double predicted = -(model.g.dot(step) + 0.5 * step.dot(model.h * step));
    if (!(predicted > 0.0) || step.norm() < cfg.min_radius) {
      radius *= cfg.shrink;
      ++stall;
      continue;
    }
    const Vec trial = center + step;
    const double best_before = res.f;
    const double ft = evaluate(trial);
    const double rho = (fc - ft) / predicted;

    if (pts.size() >= max_points) {
      std::size_t far = 0;
      double dist = -1.0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double d = (pts[k] - center).norm();
        if (k != best && d > dist) {
          dist = d;
          far = k;
        }
      }
      pts.erase(pts.begin() + static_cast<long>(far));
      vals.erase(vals.begin() + static_cast<long>(far));
    }
    pts.push_back(trial);
    vals.push_back(ft);

    if (rho < cfg.eta_low) {
      radius *= cfg.shrink;
    } else if (rho >= cfg.eta_high && step.norm() >= 0.99 * radius) {
      radius *= cfg.grow;
    }

    if (res.f < best_before) {
      stall = 0;
      improvements.push_back((best_before - res.f) / std::max(std::abs(best_before), 1e-300));
      if (static_cast<int>(improvements.size()) > cfg.improvement_window) improvements.pop_front();
      if (static_cast<int>(improvements.size()) == cfg.improvement_window &&
          std::all_of(improvements.begin(), improvements.end(),
                      [&](double r) { return r < cfg.small_improvement; })) {
        break;
      }
    } else {
      ++stall;
    }
  }
  return res;
}

/// DFO-TR on the simulator: each evaluation averages `episodes_per` episodes
/// (the same episodes for every point). The default start is the lead-time
/// demand of each edge.
inline OptimizerRun optimize_dfo_tr(const Environment& env, int evaluations, int episodes_per,
                                    std::optional<std::vector<double>> x0 = std::nullopt, DfoConfig cfg = {}) {
  if (episodes_per <= 0) throw std::invalid_argument("DFO-TR: episodes per evaluation must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t start = env.interactions();
  cfg.max_evaluations = evaluations;
  std::vector<double> x = x0 ? *x0 : env.network().lead_time_demand();
  if (x.size() != env.dim()) throw DimensionMismatch(env.dim(), x.size());
  OptimizerRun run;
  run.method = "dfo_tr";
  const auto res = minimize_dfo_tr(
      [&](std::span<const double> v) {
        const double c = env.mean_cost(v, streams::dfo, 0, episodes_per);
        run.record(env.interactions() - start, std::vector<double>(v.begin(), v.end()), c);
        return c;
      },
      std::move(x), cfg);
  run.interactions = env.interactions() - start;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace smeio

#endif  // SMEIO_DFO_TR_HPP
