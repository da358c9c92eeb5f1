#ifndef SMEIO_COST_EXPR_HPP
#define SMEIO_COST_EXPR_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "smeio/scalar.hpp"

namespace smeio {

class CostExprError : public std::runtime_error {
 public:
  enum class Kind { unknown_kind, missing_field, non_finite_coefficient, invalid_field };

  CostExprError(Kind kind, std::string path, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + " at " + path + ": " + what),
        kind_(kind),
        path_(std::move(path)) {}

  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::unknown_kind: return "UnknownKind";
      case Kind::missing_field: return "MissingField";
      case Kind::non_finite_coefficient: return "NonFiniteCoefficient";
      case Kind::invalid_field: return "InvalidField";
    }
    return "CostExprError";
  }

 private:
  Kind kind_;
  std::string path_;
};

/// Holding, stockout and salvage functions as a small immutable expression
/// tree: constants, c*x, c*x^p, a + b*x, sums, maxima and one-threshold
/// piecewise switches (below(x) when x < t, otherwise above(x)).
class CostExpr {
 public:
  enum class Kind { constant, linear, power, affine, sum, max, piecewise };

  CostExpr() = default;  // the zero function

  static CostExpr constant(double c) { return CostExpr(Kind::constant, c, 0.0, 0); }
  static CostExpr linear(double c) { return CostExpr(Kind::linear, c, 0.0, 1); }
  static CostExpr power(double c, int p) {
    if (p < 1) throw std::invalid_argument("CostExpr::power: exponent must be >= 1");
    return CostExpr(Kind::power, c, 0.0, p);
  }
  static CostExpr affine(double a, double b) { return CostExpr(Kind::affine, a, b, 0); }
  static CostExpr sum(std::vector<CostExpr> terms) {
    CostExpr e(Kind::sum, 0.0, 0.0, 0);
    e.terms_ = std::move(terms);
    return e;
  }
  static CostExpr max(std::vector<CostExpr> terms) {
    if (terms.empty()) throw std::invalid_argument("CostExpr::max: needs at least one term");
    CostExpr e(Kind::max, 0.0, 0.0, 0);
    e.terms_ = std::move(terms);
    return e;
  }
  static CostExpr piecewise(double threshold, CostExpr below, CostExpr above) {
    CostExpr e(Kind::piecewise, threshold, 0.0, 0);
    e.terms_ = {std::move(below), std::move(above)};
    return e;
  }

  /// k * f(x) for k > 0.
  CostExpr scaled(double k) const {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("CostExpr::scaled: factor must be positive");
    CostExpr e = *this;
    switch (kind_) {
      case Kind::constant:
      case Kind::linear:
      case Kind::power: e.a_ *= k; break;
      case Kind::affine:
        e.a_ *= k;
        e.b_ *= k;
        break;
      case Kind::sum:
      case Kind::max:
      case Kind::piecewise:
        for (auto& t : e.terms_) t = t.scaled(k);
        break;
    }
    return e;
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::constant && a_ == 0.0; }

  /// Value with the outermost "0 for negative arguments" gate applied.
  template <Scalar S>
  S operator()(const S& x) const {
    if (branch_lt(x, S(0.0))) return S(0.0);
    return raw(x);
  }

  /// Value without the gate; inner pieces always evaluate as written.
  template <Scalar S>
  S raw(const S& x) const {
    switch (kind_) {
      case Kind::constant: return S(a_);
      case Kind::linear: return S(a_) * x;
      case Kind::power: return S(a_) * ipow(x, p_);
      case Kind::affine: return S(a_) + S(b_) * x;
      case Kind::sum: {
        S acc(0.0);
        for (const auto& t : terms_) acc += t.raw(x);
        return acc;
      }
      case Kind::max: {
        S best = terms_.front().raw(x);
        for (std::size_t i = 1; i < terms_.size(); ++i) best = smax(best, terms_[i].raw(x));
        return best;
      }
      case Kind::piecewise:
        return branch_lt(x, S(a_)) ? terms_[0].raw(x) : terms_[1].raw(x);
    }
    return S(0.0);
  }

  friend bool operator==(const CostExpr&, const CostExpr&) = default;

  nlohmann::json to_json() const {
    using nlohmann::json;
    switch (kind_) {
      case Kind::constant: return json{{"kind", "const"}, {"value", a_}};
      case Kind::linear: return json{{"kind", "linear"}, {"coef", a_}};
      case Kind::power: return json{{"kind", "power"}, {"coef", a_}, {"exp", p_}};
      case Kind::affine: return json{{"kind", "affine"}, {"a", a_}, {"b", b_}};
      case Kind::sum:
      case Kind::max: {
        json terms = json::array();
        for (const auto& t : terms_) terms.push_back(t.to_json());
        return json{{"kind", kind_ == Kind::sum ? "sum" : "max"}, {"terms", terms}};
      }
      case Kind::piecewise:
        return json{{"kind", "piecewise"},
                    {"threshold", a_},
                    {"below", terms_[0].to_json()},
                    {"above", terms_[1].to_json()}};
    }
    return nullptr;
  }

  /// Parses the instance-file form. A bare number is shorthand for c*x.
  static CostExpr from_json(const nlohmann::json& j, const std::string& path = "$") {
    if (j.is_number()) return linear(finite(j.get<double>(), path));
    if (!j.is_object()) {
      throw CostExprError(CostExprError::Kind::invalid_field, path,
                          "expected an object or a number");
    }
    const auto kind_it = j.find("kind");
    if (kind_it == j.end()) {
      throw CostExprError(CostExprError::Kind::missing_field, path + ".kind", "field is required");
    }
    if (!kind_it->is_string()) {
      throw CostExprError(CostExprError::Kind::invalid_field, path + ".kind", "must be a string");
    }
    const std::string kind = kind_it->get<std::string>();
    if (kind == "const") return constant(number(j, "value", path));
    if (kind == "linear") return linear(number(j, "coef", path));
    if (kind == "power") {
      const double c = number(j, "coef", path);
      const double p = number(j, "exp", path);
      if (p < 1.0 || p != std::floor(p) || p > 64.0) {
        throw CostExprError(CostExprError::Kind::invalid_field, path + ".exp",
                            "exponent must be an integer in [1, 64]");
      }
      return power(c, static_cast<int>(p));
    }
    if (kind == "affine") return affine(number(j, "a", path), number(j, "b", path));
    if (kind == "sum" || kind == "max") {
      const auto it = j.find("terms");
      if (it == j.end()) {
        throw CostExprError(CostExprError::Kind::missing_field, path + ".terms", "field is required");
      }
      if (!it->is_array() || (kind == "max" && it->empty())) {
        throw CostExprError(CostExprError::Kind::invalid_field, path + ".terms",
                            "must be a non-empty array");
      }
      std::vector<CostExpr> terms;
      for (std::size_t i = 0; i < it->size(); ++i) {
        terms.push_back(from_json((*it)[i], path + ".terms[" + std::to_string(i) + "]"));
      }
      return kind == "sum" ? sum(std::move(terms)) : max(std::move(terms));
    }
    if (kind == "piecewise") {
      const double t = number(j, "threshold", path);
      if (!j.contains("below")) {
        throw CostExprError(CostExprError::Kind::missing_field, path + ".below", "field is required");
      }
      if (!j.contains("above")) {
        throw CostExprError(CostExprError::Kind::missing_field, path + ".above", "field is required");
      }
      return piecewise(t, from_json(j.at("below"), path + ".below"),
                       from_json(j.at("above"), path + ".above"));
    }
    throw CostExprError(CostExprError::Kind::unknown_kind, path + ".kind",
                        "unknown cost kind '" + kind + "'");
  }

 private:
  CostExpr(Kind k, double a, double b, int p) : kind_(k), a_(a), b_(b), p_(p) {}

  static double finite(double v, const std::string& path) {
    if (!std::isfinite(v)) {
      throw CostExprError(CostExprError::Kind::non_finite_coefficient, path, "coefficient is not finite");
    }
    return v;
  }

  static double number(const nlohmann::json& j, const char* key, const std::string& path) {
    const auto it = j.find(key);
    const std::string sub = path + "." + key;
    if (it == j.end()) throw CostExprError(CostExprError::Kind::missing_field, sub, "field is required");
    if (it->is_string()) {
      // JSON has no literal for inf/nan; accept the usual spellings so they
      // are reported as non-finite rather than as a type error.
      const std::string s = it->get<std::string>();
      if (s == "inf" || s == "-inf" || s == "nan" || s == "Infinity" || s == "-Infinity" || s == "NaN") {
        throw CostExprError(CostExprError::Kind::non_finite_coefficient, sub, "coefficient is not finite");
      }
    }
    if (!it->is_number()) throw CostExprError(CostExprError::Kind::invalid_field, sub, "must be a number");
    return finite(it->get<double>(), sub);
  }

  Kind kind_ = Kind::constant;
  double a_ = 0.0;  // constant value, coefficient, intercept or threshold
  double b_ = 0.0;  // affine slope
  int p_ = 0;
  std::vector<CostExpr> terms_;
};

/// eval_cost: the gated evaluation used for holding, stockout and salvage.
template <Scalar S>
S eval_cost(const CostExpr& expr, const S& x) {
  return expr(x);
}

inline CostExpr parse_cost_expr(const nlohmann::json& j, const std::string& path = "$") {
  return CostExpr::from_json(j, path);
}

}  // namespace smeio

#endif  // SMEIO_COST_EXPR_HPP
