#pragma once

#include "ladderlab/quadrature.hpp"

namespace ladderlab {

// Value of the Hardy function Z together with the size of the main sum
// that produced it.
struct ZEval {
  double t = 0.0;
  double z = 0.0;
  // Riemann-Siegel: floor(sqrt(t / 2pi)). Euler-Maclaurin (small t): the
  // number of directly summed terms.
  int terms_used = 0;
};

// Heights below this value go through Euler-Maclaurin summation of
// zeta(1/2 + it); at and above it the Riemann-Siegel formula with the
// C0..C4 remainder terms is used.
inline constexpr double riemann_siegel_crossover = 300.0;

// Largest height for which the Riemann-Siegel tables are sized.
inline constexpr double max_height = 1.0e7;

// (t/2) ln(t/2pi) - t/2 - pi/8. Throws DomainError for t <= 0.
[[nodiscard]] double theta1(double t);

// Riemann-Siegel theta: -t/2 ln(pi) + Im lnGamma(1/4 + it/2).
[[nodiscard]] double theta(double t);

// theta(t) - theta1(t); the asymptotic tail 1/(48t) + 7/(5760 t^3) + ...
// evaluated without the cancellation of subtracting two large numbers.
[[nodiscard]] double theta_correction(double t);

// Hardy's function Z(t) = exp(i theta(t)) zeta(1/2 + it).
[[nodiscard]] ZEval z(double t);

// Z(t) without the bookkeeping; the quadrature hot path.
[[nodiscard]] double z_value(double t);

// Local oscillation length of Z^2 near t: 2pi / ln(t/2pi), floored so the
// panel width stays bounded where the logarithm is small.
[[nodiscard]] double z2_oscillation_length(double t);

// Integral of Z^2 over iv.
[[nodiscard]] double integrate_z2(const Interval& iv, const QuadratureConfig& cfg = {});

// Smooth part of the Hardy-Littlewood integral: T ln T + (2c - 1 - ln 2pi) T.
[[nodiscard]] double hl_smooth(double T);

// d/dT hl_smooth(T) = ln T + 2c - ln 2pi.
[[nodiscard]] double hl_smooth_derivative(double T);

namespace detail {

// zeta(1/2 + it) by Euler-Maclaurin summation; returns (re, im) and the
// number of direct terms.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
};
[[nodiscard]] ComplexValue zeta_half_line_em(double t, int* terms_used = nullptr);

// Sum_{n=1}^{count} n^{-1/2} cos(phase - t ln n). Lives in its own
// translation unit built with vectorized math.
[[nodiscard]] double riemann_siegel_main_sum(double phase, double t, int count);

// Riemann-Siegel remainder coefficients C0..C4 at fractional part p.
struct RemainderCoefficients {
  double c[5];
};
[[nodiscard]] RemainderCoefficients riemann_siegel_coefficients(double p);

}  // namespace detail

}  // namespace ladderlab
