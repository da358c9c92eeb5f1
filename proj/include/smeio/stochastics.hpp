#ifndef SMEIO_STOCHASTICS_HPP
#define SMEIO_STOCHASTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace smeio {

struct NormalDemand {
  double mu = 0.0;
  double sigma = 1.0;
  friend bool operator==(const NormalDemand&, const NormalDemand&) = default;
};

struct UniformIntDemand {
  long lo = 0;
  long hi = 0;
  friend bool operator==(const UniformIntDemand&, const UniformIntDemand&) = default;
};

/// Poisson(lambda) restricted to {lo, ..., hi} and renormalised.
class TruncatedPoissonDemand {
 public:
  TruncatedPoissonDemand() = default;
  TruncatedPoissonDemand(double lambda, long lo, long hi) : lambda_(lambda), lo_(lo), hi_(hi) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("truncated Poisson: lambda must be > 0");
    if (lo < 0 || lo > hi) throw std::invalid_argument("truncated Poisson: need 0 <= lo <= hi");
    if (hi - lo > 100000) throw std::invalid_argument("truncated Poisson: support too large");
    // Log-space weights shifted by their maximum so far tails do not underflow.
    std::vector<double> logw;
    for (long k = lo; k <= hi; ++k) {
      logw.push_back(static_cast<double>(k) * std::log(lambda) - lambda - std::lgamma(static_cast<double>(k) + 1.0));
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    for (double& w : logw) {
      w = std::exp(w - top);
      total += w;
    }
    pmf_.reserve(logw.size());
    cdf_.reserve(logw.size());
    double acc = 0.0;
    for (double w : logw) {
      pmf_.push_back(w / total);
      acc += w / total;
      cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
  }

  double lambda() const { return lambda_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  const std::vector<double>& pmf() const { return pmf_; }

  /// Inverse-CDF lookup for u in [0, 1).
  long quantile(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1);
    return lo_ + idx;
  }

  friend bool operator==(const TruncatedPoissonDemand& a, const TruncatedPoissonDemand& b) {
    return a.lambda_ == b.lambda_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lambda_ = 1.0;
  long lo_ = 0;
  long hi_ = 0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

using DemandDist = std::variant<NormalDemand, UniformIntDemand, TruncatedPoissonDemand>;

inline DemandDist normal_demand(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma)) {
    throw std::invalid_argument("normal demand: need finite mu and sigma > 0");
  }
  return NormalDemand{mu, sigma};
}

inline DemandDist uniform_int_demand(long lo, long hi) {
  if (lo < 0 || lo > hi) throw std::invalid_argument("uniform demand: need 0 <= lo <= hi");
  return UniformIntDemand{lo, hi};
}

inline DemandDist truncated_poisson_demand(double lambda, long lo, long hi) {
  return TruncatedPoissonDemand(lambda, lo, hi);
}

/// Exact mean. Normal returns the unclamped mu.
inline double mean(const DemandDist& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDemand>) {
          return d.mu;
        } else if constexpr (std::is_same_v<T, UniformIntDemand>) {
          return 0.5 * static_cast<double>(d.lo + d.hi);
        } else {
          double m = 0.0;
          for (std::size_t i = 0; i < d.pmf().size(); ++i) m += static_cast<double>(d.lo() + static_cast<long>(i)) * d.pmf()[i];
          return m;
        }
      },
      dist);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// One reproducible random stream, addressed by (seed, trial, episode).
///
/// The engine seed is a hash of the three coordinates, so any substream is
/// constructible directly without draining earlier ones.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t episode)
      : engine_(mix(seed, trial, episode)) {}

  double uniform() { return std::generate_canonical<double, 53>(engine_); }
  double standard_normal() { return normal_(engine_); }
  long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t trial, std::uint64_t episode) {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(h ^ (trial * 0xd1b54a32d192ed03ULL));
    h = detail::splitmix64(h ^ (episode * 0x8cb92ba72f3d8dd7ULL));
    return h;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RngStream substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t episode) {
  return RngStream(seed, trial, episode);
}

/// One nonnegative demand draw. Normal draws are clamped at zero.
inline double sample(const DemandDist& dist, RngStream& rng) {
  return std::visit(
      [&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDemand>) {
          return std::max(0.0, d.mu + d.sigma * rng.standard_normal());
        } else if constexpr (std::is_same_v<T, UniformIntDemand>) {
          return static_cast<double>(rng.uniform_int(d.lo, d.hi));
        } else {
          return static_cast<double>(d.quantile(rng.uniform()));
        }
      },
      dist);
}

inline nlohmann::json demand_to_json(const DemandDist& dist) {
  return std::visit(
      [](const auto& d) -> nlohmann::json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalDemand>) {
          return {{"dist", "normal"}, {"mu", d.mu}, {"sigma", d.sigma}};
        } else if constexpr (std::is_same_v<T, UniformIntDemand>) {
          return {{"dist", "uniform_int"}, {"lo", d.lo}, {"hi", d.hi}};
        } else {
          return {{"dist", "truncated_poisson"}, {"lambda", d.lambda()}, {"lo", d.lo()}, {"hi", d.hi()}};
        }
      },
      dist);
}

class DemandSpecError : public std::runtime_error {
 public:
  DemandSpecError(const std::string& path, const std::string& what)
      : std::runtime_error("InvalidDemand at " + path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline DemandDist demand_from_json(const nlohmann::json& j, const std::string& path = "$") {
  if (!j.is_object()) throw DemandSpecError(path, "expected an object");
  auto num = [&](const char* key) -> double {
    const auto it = j.find(key);
    if (it == j.end()) throw DemandSpecError(path + "." + key, "field is required");
    if (!it->is_number()) throw DemandSpecError(path + "." + key, "must be a number");
    return it->get<double>();
  };
  auto integer = [&](const char* key) -> long {
    const double v = num(key);
    if (v != std::floor(v)) throw DemandSpecError(path + "." + key, "must be an integer");
    return static_cast<long>(v);
  };
  if (!j.contains("dist") || !j.at("dist").is_string()) throw DemandSpecError(path + ".dist", "field is required");
  const std::string kind = j.at("dist").get<std::string>();
  try {
    if (kind == "normal") return normal_demand(num("mu"), num("sigma"));
    if (kind == "uniform_int") return uniform_int_demand(integer("lo"), integer("hi"));
    if (kind == "truncated_poisson") return truncated_poisson_demand(num("lambda"), integer("lo"), integer("hi"));
  } catch (const std::invalid_argument& e) {
    throw DemandSpecError(path, e.what());
  }
  throw DemandSpecError(path + ".dist", "unknown distribution '" + kind + "'");
}

}  // namespace smeio

#endif  // SMEIO_STOCHASTICS_HPP
