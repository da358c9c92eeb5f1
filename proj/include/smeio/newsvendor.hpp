#ifndef SMEIO_NEWSVENDOR_HPP
#define SMEIO_NEWSVENDOR_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smeio {

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Standard normal quantile: Acklam's rational approximation followed by one
/// Halley step, accurate to about 1e-15 on (0, 1).
inline double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile: u must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (u < low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - u;
  const double step = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - step / (1.0 + 0.5 * x * step);
}

namespace detail {
inline void check_newsvendor(double sigma, double h, double p) {
  if (!(sigma > 0.0) || !(h > 0.0) || !(p > 0.0) || !std::isfinite(sigma) || !std::isfinite(h) || !std::isfinite(p)) {
    throw std::invalid_argument("InvalidParams: newsvendor needs sigma, h, p > 0");
  }
}
}  // namespace detail

/// Optimal order-up-to level for Normal(mu, sigma) demand.
inline double newsvendor_oul(double mu, double sigma, double h, double p) {
  detail::check_newsvendor(sigma, h, p);
  return mu + sigma * normal_quantile(p / (p + h));
}

/// Expected per-period cost at the optimal level.
inline double newsvendor_cost(double mu, double sigma, double h, double p) {
  (void)mu;
  detail::check_newsvendor(sigma, h, p);
  return (h + p) * normal_pdf(normal_quantile(p / (p + h))) * sigma;
}

}  // namespace smeio

#endif  // SMEIO_NEWSVENDOR_HPP
