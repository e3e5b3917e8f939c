#include "ladderlab/zeta_core.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ladderlab/constants.hpp"

namespace ladderlab {

namespace {

const double log_two_pi = std::log(two_pi);
const double log_pi = std::log(pi);

// |B_2k| for k = 1..8.
constexpr double bernoulli_abs[] = {1.0 / 6.0,         1.0 / 30.0, 1.0 / 42.0,
                                    1.0 / 30.0,        5.0 / 66.0, 691.0 / 2730.0,
                                    7.0 / 6.0,         3617.0 / 510.0};

// Im lnGamma(z) for Re z > 0 through recurrence shift and Stirling's series.
double im_log_gamma(std::complex<double> z) {
  constexpr int shift = 10;
  double arg_sum = 0.0;
  for (int j = 0; j < shift; ++j) {
    arg_sum += std::arg(z + static_cast<double>(j));
  }
  const std::complex<double> w = z + static_cast<double>(shift);
  std::complex<double> series = (w - 0.5) * std::log(w) - w;
  std::complex<double> w_pow = w;  // w^{2k-1}
  const std::complex<double> w2 = w * w;
  for (int k = 1; k <= 8; ++k) {
    const double b = (k % 2 == 1 ? 1.0 : -1.0) * bernoulli_abs[k - 1];
    series += b / (2.0 * k * (2.0 * k - 1.0)) / w_pow;
    w_pow *= w2;
  }
  return series.imag() - arg_sum;
}

// B_2k / (2k)!. Exact Bernoulli numbers for small k, otherwise
// (-1)^{k+1} 2 zeta(2k) / (2pi)^{2k} with zeta(2k) summed directly.
double bernoulli_over_factorial(int k) {
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  if (k <= 8) {
    double factorial = 1.0;
    for (int j = 2; j <= 2 * k; ++j) {
      factorial *= j;
    }
    return sign * bernoulli_abs[k - 1] / factorial;
  }
  double zeta2k = 1.0;
  for (int n = 2; n < 64; ++n) {
    const double term = std::pow(static_cast<double>(n), -2.0 * k);
    zeta2k += term;
    if (term < 1e-18) {
      break;
    }
  }
  return sign * 2.0 * zeta2k / std::pow(two_pi, 2.0 * k);
}

}  // namespace

double theta1(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("theta1 requires finite t > 0, got " + std::to_string(t));
  }
  return 0.5 * t * (std::log(t) - log_two_pi) - 0.5 * t - pi / 8.0;
}

double theta_correction(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("theta requires finite t >= 0");
  }
  if (t < 10.0) {
    if (t == 0.0) {
      return pi / 8.0;  // theta(0) = 0, theta1 has no value at 0
    }
    return theta(t) - theta1(t);
  }
  // sum_k (1 - 2^{1-2k}) |B_2k| / (4k (2k-1) t^{2k-1})
  const double inv_t = 1.0 / t;
  const double inv_t2 = inv_t * inv_t;
  double power = inv_t;
  double acc = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double weight = 1.0 - std::ldexp(1.0, 1 - 2 * k);
    acc += weight * bernoulli_abs[k - 1] / (4.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv_t2;
  }
  return acc;
}

double theta(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("theta requires finite t >= 0");
  }
  if (t == 0.0) {
    return 0.0;
  }
  if (t < 10.0) {
    return -0.5 * t * log_pi + im_log_gamma({0.25, 0.5 * t});
  }
  return theta1(t) + theta_correction(t);
}

namespace detail {

ComplexValue zeta_half_line_em(double t, int* terms_used) {
  using cd = std::complex<double>;
  const cd s{0.5, t};
  const int big_n = static_cast<int>(std::abs(t) / pi) + 20;
  double re = 0.0;
  double im = 0.0;
  for (int n = 1; n < big_n; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    re += amp * std::cos(t * ln);
    im -= amp * std::sin(t * ln);
  }
  const double n_real = static_cast<double>(big_n);
  const double ln_n = std::log(n_real);
  const cd n_pow_minus_s = std::exp(-s * ln_n);  // N^{-s}
  cd tail = n_pow_minus_s * n_real / (s - 1.0) + 0.5 * n_pow_minus_s;
  // Euler-Maclaurin corrections: B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cd rising = s / n_real * n_pow_minus_s;  // s N^{-s-1}
  double previous = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 1; k <= 60; ++k) {
    const cd term = bernoulli_over_factorial(k) * rising;
    const double size = std::abs(term);
    tail += term;
    if (size < 1e-17) {
      converged = true;
      break;
    }
    if (size > previous) {
      break;
    }
    previous = size;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k) / (n_real * n_real);
  }
  if (!converged) {
    throw NumericError(NumericError::Kind::accuracy_unattainable,
                       "Euler-Maclaurin tail did not converge at t = " + std::to_string(t));
  }
  if (terms_used != nullptr) {
    *terms_used = big_n - 1;
  }
  return ComplexValue{re + tail.real(), im + tail.imag()};
}

}  // namespace detail

ZEval z(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("Z requires finite t >= 0");
  }
  if (t > max_height) {
    throw NumericError(NumericError::Kind::accuracy_unattainable,
                       "Z: height " + std::to_string(t) + " exceeds the supported range");
  }
  ZEval out;
  out.t = t;
  if (t < riemann_siegel_crossover) {
    int used = 0;
    const detail::ComplexValue zeta = detail::zeta_half_line_em(t, &used);
    const double th = theta(t);
    out.z = std::cos(th) * zeta.re - std::sin(th) * zeta.im;
    out.terms_used = used;
    return out;
  }
  const double a = std::sqrt(t / two_pi);
  const int count = static_cast<int>(a);
  const double p = a - count;
  const double main = 2.0 * detail::riemann_siegel_main_sum(theta(t), t, count);
  const detail::RemainderCoefficients c = detail::riemann_siegel_coefficients(p);
  const double inv_a = 1.0 / a;
  const double series = c.c[0] + inv_a * (c.c[1] + inv_a * (c.c[2] + inv_a * (c.c[3] + inv_a * c.c[4])));
  const double sign = (count % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  out.z = main + sign * series / std::sqrt(a);
  out.terms_used = count;
  return out;
}

double z_value(double t) { return z(t).z; }

double z2_oscillation_length(double t) {
  const double lg = (t > two_pi) ? std::log(t) - log_two_pi : 0.0;
  return two_pi / std::max(1.0, lg);
}

double integrate_z2(const Interval& iv, const QuadratureConfig& cfg) {
  const Interval checked = Interval::make(iv.lo, iv.hi);
  auto z2 = [](double t) {
    const double v = z_value(t);
    return v * v;
  };
  // Z carries ~1e-9 absolute rounding from the phases t ln n at large t.
  constexpr double z2_noise_density = 1e-8;
  return integrate_oscillatory(z2, checked, cfg, z2_oscillation_length, z2_noise_density);
}

double hl_smooth(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("hl_smooth requires finite T > 0");
  }
  return T * std::log(T) + (2.0 * euler_c - 1.0 - log_two_pi) * T;
}

double hl_smooth_derivative(double T) {
  if (!(T > 0.0)) {
    throw DomainError("hl_smooth_derivative requires T > 0");
  }
  return std::log(T) + 2.0 * euler_c - log_two_pi;
}

}  // namespace ladderlab
