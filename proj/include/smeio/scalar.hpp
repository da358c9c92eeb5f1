#ifndef SMEIO_SCALAR_HPP
#define SMEIO_SCALAR_HPP

// Scalar abstraction shared by the simulator and the cost expressions. A
// scalar is either a plain double or a forward-mode dual number carrying a
// dense tangent over the decision edges. Every branch in the simulator reads
// only the primal value, so both instantiations consume random numbers
// identically and produce bitwise-equal primal results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace smeio {

/// Records, per tangent component, how far a run came to a non-smooth point.
///
/// For every kink predicate `a ? b` evaluated on dual scalars the distance
/// along component e is |a - b| / |d(a - b)/d theta_e|: the change in
/// theta_e that would flip the branch to first order. Only active while a
/// `KinkMonitorScope` is alive on the current thread.
class KinkMonitor {
 public:
  explicit KinkMonitor(std::size_t dim)
      : min_distance_(dim, std::numeric_limits<double>::infinity()) {}

  void record(double gap, std::span<const double> gap_tangent) {
    const std::size_t n = std::min(gap_tangent.size(), min_distance_.size());
    for (std::size_t e = 0; e < n; ++e) {
      const double slope = std::abs(gap_tangent[e]);
      if (slope == 0.0) continue;
      min_distance_[e] = std::min(min_distance_[e], std::abs(gap) / slope);
    }
  }

  const std::vector<double>& min_distance() const { return min_distance_; }

  static KinkMonitor*& active() {
    thread_local KinkMonitor* current = nullptr;
    return current;
  }

 private:
  std::vector<double> min_distance_;
};

class KinkMonitorScope {
 public:
  explicit KinkMonitorScope(KinkMonitor& monitor) : previous_(KinkMonitor::active()) {
    KinkMonitor::active() = &monitor;
  }
  ~KinkMonitorScope() { KinkMonitor::active() = previous_; }
  KinkMonitorScope(const KinkMonitorScope&) = delete;
  KinkMonitorScope& operator=(const KinkMonitorScope&) = delete;

 private:
  KinkMonitor* previous_;
};

/// Forward-mode dual number with a tangent of runtime length <= Cap.
///
/// Entries past `size()` are always zero, so a constant (size 0) combines
/// with a seeded value without any dimension bookkeeping by the caller.
template <std::size_t Cap>
class Dual {
 public:
  static constexpr std::size_t capacity = Cap;

  constexpr Dual() = default;
  constexpr Dual(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static Dual variable(double v, std::size_t index, std::size_t dim) {
    if (dim > Cap || index >= dim) throw std::out_of_range("Dual::variable: index out of range");
    Dual d(v);
    d.n_ = dim;
    d.tan_[index] = 1.0;
    return d;
  }

  double value() const { return value_; }
  std::size_t size() const { return n_; }
  double tangent(std::size_t e) const { return e < Cap ? tan_[e] : 0.0; }
  std::span<const double> tangent() const { return {tan_.data(), n_}; }

  Dual operator-() const {
    Dual r(-value_);
    r.n_ = n_;
    for (std::size_t e = 0; e < n_; ++e) r.tan_[e] = -tan_[e];
    return r;
  }

  Dual& operator+=(const Dual& o) {
    value_ += o.value_;
    grow(o.n_);
    for (std::size_t e = 0; e < o.n_; ++e) tan_[e] += o.tan_[e];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value_ -= o.value_;
    grow(o.n_);
    for (std::size_t e = 0; e < o.n_; ++e) tan_[e] -= o.tan_[e];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    const std::size_t n = std::max(n_, o.n_);
    for (std::size_t e = 0; e < n; ++e) tan_[e] = tan_[e] * o.value_ + value_ * o.tan_[e];
    n_ = n;
    value_ *= o.value_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.value_;
    const double q = value_ * inv;
    const std::size_t n = std::max(n_, o.n_);
    for (std::size_t e = 0; e < n; ++e) tan_[e] = (tan_[e] - q * o.tan_[e]) * inv;
    n_ = n;
    value_ = q;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

 private:
  void grow(std::size_t n) { n_ = std::max(n_, n); }

  double value_ = 0.0;
  std::size_t n_ = 0;
  std::array<double, Cap> tan_{};
};

template <class T>
struct is_dual : std::false_type {};
template <std::size_t Cap>
struct is_dual<Dual<Cap>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

template <class S>
concept Scalar = std::is_same_v<S, double> || is_dual_v<S>;

inline double value_of(double x) { return x; }
template <std::size_t Cap>
double value_of(const Dual<Cap>& x) {
  return x.value();
}

namespace detail {

template <std::size_t Cap>
void note_kink(const Dual<Cap>& a, const Dual<Cap>& b) {
  KinkMonitor* m = KinkMonitor::active();
  if (m == nullptr) return;
  const Dual<Cap> gap = a - b;
  m->record(gap.value(), gap.tangent());
}
inline void note_kink(double, double) {}

}  // namespace detail

/// a >= b on primal values; records the predicate as a potential kink.
template <Scalar S>
bool branch_ge(const S& a, const S& b) {
  detail::note_kink(a, b);
  return value_of(a) >= value_of(b);
}

/// a < b on primal values; records the predicate as a potential kink.
template <Scalar S>
bool branch_lt(const S& a, const S& b) {
  detail::note_kink(a, b);
  return value_of(a) < value_of(b);
}

/// Larger argument; the first one wins ties.
template <Scalar S>
S smax(const S& a, const S& b) {
  return branch_ge(a, b) ? a : b;
}

/// Smaller argument; the first one wins ties.
template <Scalar S>
S smin(const S& a, const S& b) {
  detail::note_kink(a, b);
  return value_of(a) <= value_of(b) ? a : b;
}

/// x^+ with zero tangent at x == 0.
template <Scalar S>
S pos(const S& x) {
  detail::note_kink(x, S(0.0));
  return value_of(x) > 0.0 ? x : S(0.0);
}

/// x^- = max(-x, 0).
template <Scalar S>
S neg(const S& x) {
  return pos(S(-x));
}

/// x^p for an integer exponent p >= 0 by repeated multiplication.
template <Scalar S>
S ipow(const S& x, int p) {
  S r(1.0);
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

/// Invokes fn.template operator()<Cap>() with the smallest supported dual
/// capacity that holds `dim` tangent components.
template <class Fn>
decltype(auto) with_dual_capacity(std::size_t dim, Fn&& fn) {
  if (dim <= 4) return fn.template operator()<4>();
  if (dim <= 16) return fn.template operator()<16>();
  if (dim <= 64) return fn.template operator()<64>();
  if (dim <= 256) return fn.template operator()<256>();
  throw std::length_error("more than 256 decision edges are not supported in dual mode");
}

}  // namespace smeio

#endif  // SMEIO_SCALAR_HPP
