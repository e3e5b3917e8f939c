#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "ladderlab/errors.hpp"

namespace ladderlab {

// A closed range [lo, hi] of heights on the critical line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  // Validates lo <= hi, both finite and non-negative.
  static Interval make(double lo, double hi);

  [[nodiscard]] double length() const noexcept { return hi - lo; }
};

struct QuadratureConfig {
  int points_per_oscillation = 8;
  double abs_tol = 1e-6;
  double rel_tol = 1e-8;
  // Maximum number of times a single panel may be bisected.
  int max_subdivisions = 16;

  void validate() const;
};

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

// Rules are computed once per order and kept for the process lifetime.
// Orders 1..128 are supported.
[[nodiscard]] GaussRule gauss_legendre(int order);

// Running sum with Neumaier compensation; panel counts reach millions.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

struct PanelValue {
  double sum = 0.0;
  // Total variation of f across the nodes; bounds the effect of rounding
  // the abscissae.
  double variation = 0.0;
};

template <class F>
PanelValue gauss_panel(F& f, const GaussRule& rule, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  double var = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]);
    acc += rule.weights[i] * v;
    if (i > 0) {
      var += std::abs(v - prev);
    }
    prev = v;
  }
  return {acc * half, var};
}

// Compares the rule on [a, b] against the same rule on both halves and
// bisects until they agree. `whole` is the already computed coarse value.
// Disagreement below ~ulp(t) * variation comes from rounding the nodes
// themselves and is accepted.
template <class F>
double refine_panel(F& f, const GaussRule& rule, double a, double b, double whole,
                    double abs_tol_density, double rel_tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const PanelValue left = gauss_panel(f, rule, a, m);
  const PanelValue right = gauss_panel(f, rule, m, b);
  const double fine = left.sum + right.sum;
  const double node_noise =
      8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) *
      (left.variation + right.variation);
  const double tol = std::max({abs_tol_density * (b - a), rel_tol * std::abs(fine), node_noise});
  if (std::abs(fine - whole) <= tol) {
    return fine;
  }
  if (depth >= max_depth) {
    throw NumericError(NumericError::Kind::tolerance_not_met,
                       "quadrature: tolerance not met on panel [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] after " + std::to_string(max_depth) +
                           " subdivisions");
  }
  return refine_panel(f, rule, a, m, left.sum, abs_tol_density, rel_tol, depth + 1, max_depth) +
         refine_panel(f, rule, m, b, right.sum, abs_tol_density, rel_tol, depth + 1, max_depth);
}

}  // namespace detail

// Composite Gauss-Legendre integration of f over iv with panels no wider
// than oscillation_length(t) at their left end; cfg.points_per_oscillation
// nodes per panel, each panel checked against its bisection.
// noise_density is the absolute evaluation error of f per unit length;
// panel disagreements below it are rounding, not truncation, and further
// bisection cannot remove them.
template <class F, class Scale>
double integrate_oscillatory(F&& f, const Interval& iv, const QuadratureConfig& cfg,
                             Scale&& oscillation_length, double noise_density = 0.0) {
  cfg.validate();
  const double length = iv.length();
  if (length <= 0.0) {
    return 0.0;
  }
  const GaussRule rule = gauss_legendre(cfg.points_per_oscillation);
  const double abs_tol_density = std::max(cfg.abs_tol / length, noise_density);
  CompensatedSum total;
  double a = iv.lo;
  while (a < iv.hi) {
    double w = oscillation_length(a);
    double b = a + w;
    // Avoid a sliver panel at the end.
    if (b >= iv.hi || iv.hi - b < 0.25 * w) {
      b = iv.hi;
    }
    const double whole = detail::gauss_panel(f, rule, a, b).sum;
    total.add(detail::refine_panel(f, rule, a, b, whole, abs_tol_density, cfg.rel_tol, 0,
                                   cfg.max_subdivisions));
    a = b;
  }
  return total.value();
}

}  // namespace ladderlab
