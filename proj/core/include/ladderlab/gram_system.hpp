#pragma once

#include <vector>

#include "ladderlab/quadrature.hpp"

namespace ladderlab {

enum class Parity { even, odd };

// A solution t of theta1(t) = pi nu / 2 + tau / 2 on the increasing branch
// t > 2pi. Kept in extended precision: at t ~ 1e6 a double cannot hold the
// abscissa finely enough to meet the 1e-10 residual on theta1.
struct GNode {
  long nu = 0;
  double tau = 0.0;
  long double t = 0.0L;
};

// The piece (g_nu(-v), g_nu(v)) generated by one node. Treated as the
// half-open range [lo, hi) so that at v = pi/2 neighbouring pieces, which
// share an endpoint, stay disjoint.
struct GInterval {
  long nu = 0;
  Parity parity = Parity::even;
  double lo = 0.0;
  double hi = 0.0;
  double v = 0.0;

  [[nodiscard]] double length() const noexcept { return hi - lo; }
};

// Union of the pieces around all nodes of one parity in a window [T, T+U].
struct DisconnectedSet {
  std::vector<GInterval> pieces;  // sorted by lo, pairwise disjoint
  Interval window;
  double v = 0.0;
  Parity parity = Parity::even;
};

// pi nu / 2 + tau / 2, computed so that (2nu, pi/2) and (2nu + 1, -pi/2)
// give bit-identical targets.
[[nodiscard]] long double g_target(long nu, double tau);

// theta1 in extended precision.
[[nodiscard]] long double theta1_extended(long double t);

[[nodiscard]] GNode solve_g(long nu, double tau, double tol = 1e-10);

// All nodes g_nu = g_nu(0) of the given parity with T <= g_nu <= T + U, in
// increasing order. Throws NumericError(window_too_small) when U > 0 and
// the window holds no node of that parity.
[[nodiscard]] std::vector<GNode> enumerate_nodes(double T, double U, Parity parity);

[[nodiscard]] DisconnectedSet build_set(double T, double U, double v, Parity parity);

[[nodiscard]] double measure(const DisconnectedSet& s);

// True when no piece of a meets a piece of b (half-open pieces).
[[nodiscard]] bool pieces_disjoint(const DisconnectedSet& a, const DisconnectedSet& b);

// Width U_c of the window [T, T + U_c] across which theta1 rises by exactly
// node_count * pi / 2, i.e. a window spanning node_count node spacings.
[[nodiscard]] double window_for_node_count(double T, long node_count);

}  // namespace ladderlab
