#include "ladderlab/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ladderlab {

namespace {

constexpr int max_order = 128;

struct RuleStorage {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence from Chebyshev-like starts.
RuleStorage build_rule(int n) {
  RuleStorage r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p0 = 1.0;
        p1 = x;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    r.nodes[n / 2] = 0.0;
  }
  return r;
}

const std::array<RuleStorage, max_order + 1>& rule_table() {
  static const std::array<RuleStorage, max_order + 1> table = [] {
    std::array<RuleStorage, max_order + 1> t;
    t[1].nodes = {0.0};
    t[1].weights = {2.0};
    for (int n = 2; n <= max_order; ++n) {
      t[n] = build_rule(n);
    }
    return t;
  }();
  return table;
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("interval endpoints must be finite");
  }
  if (lo < 0.0) {
    throw DomainError("interval must lie in t >= 0");
  }
  if (lo > hi) {
    throw DomainError("interval requires lo <= hi");
  }
  return Interval{lo, hi};
}

void QuadratureConfig::validate() const {
  if (points_per_oscillation < 4 || points_per_oscillation > max_order) {
    throw DomainError("points_per_oscillation must be in [4, 128]");
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 0) {
    throw DomainError("max_subdivisions must be non-negative");
  }
}

GaussRule gauss_legendre(int order) {
  if (order < 1 || order > max_order) {
    throw DomainError("Gauss-Legendre order must be in [1, 128]");
  }
  const RuleStorage& r = rule_table()[order];
  return GaussRule{r.nodes, r.weights};
}

}  // namespace ladderlab
