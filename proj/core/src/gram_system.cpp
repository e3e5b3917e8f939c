#include "ladderlab/gram_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/lambert_w.hpp>

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

constexpr long double pi_ld = std::numbers::pi_v<long double>;
constexpr long double two_pi_ld = 2.0L * std::numbers::pi_v<long double>;
const long double log_two_pi_ld = std::log(two_pi_ld);

void check_window(double T, double U) {
  if (!(T >= 100.0) || !std::isfinite(T)) {
    throw DomainError("node enumeration requires T >= 100");
  }
  if (!(U >= 0.0) || !std::isfinite(U)) {
    throw DomainError("node enumeration requires a finite U >= 0");
  }
}

void check_v(double v) {
  if (!(v > 0.0) || v > half_pi) {
    throw DomainError("v must lie in (0, pi/2], got " + std::to_string(v));
  }
}

// Solves theta1(t) = target on t > 2pi for target > -pi - pi/8.
long double invert_theta1(long double target, double tol) {
  // theta1(t) = (t/2) ln(t / (2 pi e)) - pi/8  =>  t = 2pi exp(1 + W(q)),
  // q = (target + pi/8) / (pi e).
  const double q = static_cast<double>((target + pi_ld / 8.0L) / (pi_ld * std::numbers::e_v<long double>));
  long double t = (q > -1.0 / std::numbers::e)
                      ? static_cast<long double>(two_pi * std::exp(1.0 + boost::math::lambert_w0(q)))
                      : two_pi_ld;
  long double lo = two_pi_ld;
  long double hi = std::max(2.0L * t, two_pi_ld * 4.0L);
  while (theta1_extended(hi) < target) {
    hi *= 2.0L;
  }
  t = std::clamp(t, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const long double f = theta1_extended(t) - target;
    if (std::fabs(f) <= tol) {
      return t;
    }
    (f < 0.0L ? lo : hi) = t;
    const long double slope = 0.5L * (std::log(t) - log_two_pi_ld);
    long double next = t - f / slope;
    if (!(next > lo && next < hi) || iter >= 50) {
      next = 0.5L * (lo + hi);
    }
    if (next == t) {
      break;
    }
    t = next;
  }
  const long double residual = std::fabs(theta1_extended(t) - target);
  if (residual <= tol) {
    return t;
  }
  throw NumericError(NumericError::Kind::no_convergence,
                     "g-point solver did not reach residual " + std::to_string(tol));
}

}  // namespace

long double theta1_extended(long double t) {
  return 0.5L * t * (std::log(t) - log_two_pi_ld) - 0.5L * t - pi_ld / 8.0L;
}

long double g_target(long nu, double tau) {
  // tau / (pi/2) is exactly +-1 for tau = +-pi/2, so the quarter-pi count
  // below is an exact small integer in those cases.
  const double quarter_turns = 2.0 * static_cast<double>(nu) + tau / half_pi;
  return (pi_ld / 4.0L) * static_cast<long double>(quarter_turns);
}

GNode solve_g(long nu, double tau, double tol) {
  if (nu < 1) {
    throw DomainError("solve_g requires nu >= 1");
  }
  if (!(tau >= -pi && tau <= pi)) {
    throw DomainError("solve_g requires tau in [-pi, pi]");
  }
  if (!(tol > 0.0)) {
    throw DomainError("solve_g requires a positive tolerance");
  }
  return GNode{nu, tau, invert_theta1(g_target(nu, tau), tol)};
}

std::vector<GNode> enumerate_nodes(double T, double U, Parity parity) {
  check_window(T, U);
  const long double lo_level = theta1_extended(T) / (pi_ld / 2.0L);
  const long double hi_level = theta1_extended(static_cast<long double>(T) + U) / (pi_ld / 2.0L);
  // One extra index on each side absorbs rounding in the level estimate;
  // membership is decided on the solved abscissa.
  const long first = std::max(1L, static_cast<long>(std::ceil(lo_level)) - 1);
  const long last = static_cast<long>(std::floor(hi_level)) + 1;
  const long want = (parity == Parity::even) ? 0 : 1;
  std::vector<GNode> nodes;
  nodes.reserve(static_cast<std::size_t>(std::max(0L, (last - first) / 2 + 1)));
  for (long nu = first; nu <= last; ++nu) {
    if (nu % 2 != want) {
      continue;
    }
    const GNode g = solve_g(nu, 0.0);
    if (g.t >= T && g.t <= static_cast<long double>(T) + U) {
      nodes.push_back(g);
    }
  }
  if (nodes.empty() && U > 0.0) {
    throw NumericError(NumericError::Kind::window_too_small,
                       "no g-points of the requested parity in [" + std::to_string(T) + ", " +
                           std::to_string(T + U) + "]");
  }
  return nodes;
}

DisconnectedSet build_set(double T, double U, double v, Parity parity) {
  check_v(v);
  DisconnectedSet set;
  set.window = Interval::make(T, T + U);
  set.v = v;
  set.parity = parity;
  const std::vector<GNode> nodes = enumerate_nodes(T, U, parity);
  set.pieces.reserve(nodes.size());
  for (const GNode& g : nodes) {
    GInterval piece;
    piece.nu = g.nu;
    piece.parity = parity;
    piece.v = v;
    piece.lo = static_cast<double>(solve_g(g.nu, -v).t);
    piece.hi = static_cast<double>(solve_g(g.nu, v).t);
    set.pieces.push_back(piece);
  }
  return set;
}

double measure(const DisconnectedSet& s) {
  CompensatedSum sum;
  for (const GInterval& p : s.pieces) {
    sum.add(p.length());
  }
  return sum.value();
}

bool pieces_disjoint(const DisconnectedSet& a, const DisconnectedSet& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.pieces.size() && j < b.pieces.size()) {
    const GInterval& p = a.pieces[i];
    const GInterval& q = b.pieces[j];
    if (p.lo < q.hi && q.lo < p.hi) {
      return false;
    }
    (p.hi <= q.hi ? i : j) += 1;
  }
  return true;
}

double window_for_node_count(double T, long node_count) {
  if (!(T >= 100.0)) {
    throw DomainError("window_for_node_count requires T >= 100");
  }
  if (node_count < 1) {
    throw DomainError("window_for_node_count requires a positive node count");
  }
  const long double target = theta1_extended(T) + node_count * (pi_ld / 2.0L);
  return static_cast<double>(invert_theta1(target, 1e-10) - T);
}

}  // namespace ladderlab
