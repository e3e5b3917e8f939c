// Taylor coefficients of the Riemann-Siegel remainder terms C0..C4.
//
// With u = p - 1/2 the kernel is Psi(u) = -cos(2pi u^2 - 5pi/8) / cos(2pi u),
// an even entire function. Its series is obtained by power-series division
// in 100-digit arithmetic (the two factors individually have radius 1/4, so
// the quotient coefficients come out of heavy cancellation), then the
// derivative combinations defining C0..C4 are formed and rounded to double.

#include <array>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ladderlab/zeta_core.hpp"

namespace ladderlab::detail {

namespace {

using big = boost::multiprecision::cpp_bin_float_100;

constexpr int degree = 120;  // highest power of u kept in Psi

struct CoefficientTable {
  // C_k(u) = u^(k mod 2) * sum_j c[k][j] w^j with w = u^2; C0, C2, C4 are
  // even in u and C1, C3 odd.
  std::array<std::vector<double>, 5> c;
};

std::vector<big> psi_series() {
  const big pi = boost::math::constants::pi<big>();
  const int terms = degree / 2 + 1;  // powers of w = u^2
  std::vector<big> num(terms), den(terms);
  const big cos_shift = cos(5 * pi / 8);
  const big sin_shift = sin(5 * pi / 8);
  // cos(2pi w - 5pi/8) = cos(5pi/8) cos(2pi w) + sin(5pi/8) sin(2pi w)
  // cos(2pi u)        = sum (-1)^j (2pi)^{2j} w^j / (2j)!
  big power = 1;  // (2pi)^j
  big fact = 1;   // j!
  for (int j = 0; j < 2 * terms; ++j) {
    if (j > 0) {
      power *= 2 * pi;
      fact *= j;
    }
    const big term = power / fact;
    if (j < terms) {
      const int sign = ((j / 2) % 2 == 0) ? 1 : -1;
      num[j] = (j % 2 == 0) ? sign * cos_shift * term : sign * sin_shift * term;
    }
    if (j % 2 == 0 && j / 2 < terms) {
      den[j / 2] = ((j / 2) % 2 == 0 ? 1 : -1) * term;
    }
  }
  // psi = -num / den
  std::vector<big> q(terms);
  for (int j = 0; j < terms; ++j) {
    big acc = -num[j];
    for (int i = 1; i <= j; ++i) {
      acc -= den[i] * q[j - i];
    }
    q[j] = acc / den[0];
  }
  std::vector<big> psi(degree + 1, big(0));
  for (int j = 0; j < terms; ++j) {
    psi[2 * j] = q[j];
  }
  return psi;
}

std::vector<big> derivative(const std::vector<big>& s, int order) {
  std::vector<big> d = s;
  for (int o = 0; o < order; ++o) {
    std::vector<big> next(d.size(), big(0));
    for (std::size_t j = 1; j < d.size(); ++j) {
      next[j - 1] = d[j] * static_cast<int>(j);
    }
    d = std::move(next);
  }
  return d;
}

CoefficientTable build_table() {
  const big pi = boost::math::constants::pi<big>();
  const std::vector<big> psi = psi_series();
  std::array<std::vector<big>, 13> d;
  for (int k = 0; k <= 12; ++k) {
    d[k] = derivative(psi, k);
  }
  const big pi2 = pi * pi;
  const big pi4 = pi2 * pi2;
  const big pi6 = pi4 * pi2;
  const big pi8 = pi4 * pi4;

  std::array<std::vector<big>, 5> c;
  for (auto& v : c) {
    v.assign(degree + 1, big(0));
  }
  for (int j = 0; j <= degree; ++j) {
    c[0][j] = d[0][j];
    c[1][j] = -d[3][j] / (96 * pi2);
    c[2][j] = d[2][j] / (64 * pi2) + d[6][j] / (18432 * pi4);
    c[3][j] = -d[1][j] / (64 * pi2) - d[5][j] / (3840 * pi4) - d[9][j] / (5308416 * pi6);
    c[4][j] = d[0][j] / (128 * pi2) + 19 * d[4][j] / (24576 * pi4) +
              11 * d[8][j] / (5898240 * pi6) + d[12][j] / (big(2038431744) * pi8);
  }

  CoefficientTable table;
  for (int k = 0; k < 5; ++k) {
    const int parity = k % 2;
    // Drop the tail once it cannot matter on |u| <= 1/2.
    int last = degree;
    while (last > 0 && (last % 2 != parity || abs(c[k][last]) * pow(big(0.5), last) < big(1e-20))) {
      --last;
    }
    for (int j = parity; j <= last; j += 2) {
      table.c[k].push_back(static_cast<double>(c[k][j]));
    }
  }
  return table;
}

const CoefficientTable& coefficient_table() {
  static const CoefficientTable table = build_table();
  return table;
}

}  // namespace

RemainderCoefficients riemann_siegel_coefficients(double p) {
  const CoefficientTable& table = coefficient_table();
  const double u = p - 0.5;
  const double w = u * u;
  RemainderCoefficients out{};
  for (int k = 0; k < 5; ++k) {
    const std::vector<double>& a = table.c[k];
    double acc = 0.0;
    for (std::size_t j = a.size(); j-- > 0;) {
      acc = acc * w + a[j];
    }
    out.c[k] = (k % 2 == 1) ? acc * u : acc;
  }
  return out;
}

}  // namespace ladderlab::detail
