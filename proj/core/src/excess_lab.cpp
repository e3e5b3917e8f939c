#include "ladderlab/excess_lab.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/gram_system.hpp"
#include "ladderlab/zeta_core.hpp"

namespace ladderlab {

namespace {

void check_excess_args(double T, double v) {
  if (!(T >= 1e4) || !std::isfinite(T)) {
    throw DomainError("excess requires T >= 1e4");
  }
  if (!(v > 0.0) || v > half_pi) {
    throw DomainError("excess requires v in (0, pi/2]");
  }
}

double integrate_set(const DisconnectedSet& s, const QuadratureConfig& cfg) {
  CompensatedSum sum;
  for (const GInterval& p : s.pieces) {
    sum.add(integrate_z2(Interval::make(p.lo, p.hi), cfg));
  }
  return sum.value();
}

double positive_log(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw NumericError(NumericError::Kind::accuracy_unattainable,
                       std::string(what) + " is not positive (" + std::to_string(x) + "); its log is undefined");
  }
  return std::log(x);
}

double curve_scale(FociLabel label, double v, double l3) {
  return label == FociLabel::F3F4 ? lemniscate_a_bar(v, l3) : lemniscate_a(v, l3);
}

void check_point_on(double scale, const PointM& M, const char* curve) {
  const double p = scale * scale;
  if (!(M.l1 > 0.0) || !(M.l2 > 0.0) || std::abs(M.l1 * M.l2 - p) > 1e-9 * p) {
    throw DomainError(std::string("point M is not on ") + curve + " (l1 l2 = " + std::to_string(M.l1 * M.l2) +
                      ", expected " + std::to_string(p) + ")");
  }
}

// Excess rescaled to the full window when a capped window was used.
double full_scale_lhs(const ExcessReport& e) {
  if (e.u_mode == UMode::paper) {
    return e.lhs;
  }
  return e.lhs * (u_of(e.T) / e.U_used);
}

}  // namespace

double u_of(double T) {
  if (!(T > std::numbers::e) || !std::isfinite(T)) {
    throw DomainError("U(T) requires T > e");
  }
  const double lg = std::log(T);
  return std::exp(5.0 / 12.0 * lg) * lg * lg * lg;
}

double window_width(double T, UMode mode, long n_target) {
  if (mode == UMode::paper) {
    return u_of(T);
  }
  if (n_target < 1) {
    throw DomainError("capped window needs a positive interval count");
  }
  return window_for_node_count(T, 2 * n_target);
}

ExcessReport excess(double T, double v, UMode mode, const QuadratureConfig& cfg, long n_target) {
  check_excess_args(T, v);
  cfg.validate();
  ExcessReport r;
  r.T = T;
  r.v = v;
  r.u_mode = mode;
  r.U_used = window_width(T, mode, n_target);
  const DisconnectedSet g3 = build_set(T, r.U_used, v, Parity::even);
  const DisconnectedSet g4 = build_set(T, r.U_used, v, Parity::odd);
  r.g3_pieces = g3.pieces.size();
  r.g4_pieces = g4.pieces.size();
  r.g3_integral = integrate_set(g3, cfg);
  r.g4_integral = integrate_set(g4, cfg);
  r.lhs = r.g3_integral - r.g4_integral;
  r.main_term = 4.0 / pi * r.U_used * std::sin(v);
  r.rel_dev = std::abs(r.lhs - r.main_term) / r.main_term;
  return r;
}

std::pair<double, double> both_integrals(double T, double v, UMode mode, const QuadratureConfig& cfg) {
  const ExcessReport r = excess(T, v, mode, cfg);
  return {r.g3_integral, r.g4_integral};
}

ExcessSource direct_excess_source() {
  return [](double T, double v, UMode mode, const QuadratureConfig& cfg) { return excess(T, v, mode, cfg); };
}

double product_integral(double T, int k, double l, const QuadratureConfig& cfg, LadderModel model) {
  if (k < 1 || k > 4) {
    throw DomainError("product_integral supports k = 1..4");
  }
  if (!(l >= 0.0) || l > 10.0) {
    throw DomainError("product_integral requires 0 <= l <= 10");
  }
  if (!(T > 100.0) || T > 1e6 * 1.0000001) {
    throw DomainError("product_integral requires 100 < T <= 1e6");
  }
  cfg.validate();
  const double lo = reverse_iterate(T, k, model);
  const double hi = (l == 0.0) ? lo : reverse_iterate(T + 2.0 * l, k, model);
  if (!(hi > lo)) {
    return 0.0;
  }
  auto integrand = [k, model](double t) {
    double y = t;
    double z = z_value(y);
    double prod = z * z;
    for (int r = 1; r < k; ++r) {
      y = phi1(y, model);
      z = z_value(y);
      prod *= z * z;
    }
    return prod;
  };
  // Z^2(phi1^r(t)) oscillates faster than Z^2(t) wherever phi1 is steep;
  // start from panels k times finer and let bisection handle the rest.
  auto scale = [k](double t) { return z2_oscillation_length(t) / k; };
  const double lg = std::log(T);
  const double noise_density = 1e-8 * k * std::pow(lg, k);
  return integrate_oscillatory(integrand, Interval::make(lo, hi), cfg, scale, noise_density);
}

double power_12_5(double p) { return std::exp(2.4 * positive_log(p, "excess")); }

double identity_rhs(double T, double l3, double v, const PointM& M, const QuadratureConfig& cfg) {
  check_point_on(lemniscate_a(v, l3), M, "L[l3, v]");
  const double p4 = product_integral(T, 4, M.l1, cfg);
  const double p3 = product_integral(T, 3, M.l2, cfg);
  const double p1 = product_integral(T, 1, l3, cfg);
  return std::exp(std::log(T) + positive_log(p4, "P4") + positive_log(p3, "P3") + 0.2 * positive_log(p1, "P1"));
}

FunctionalParts functional_parts(const FunctionalInput& inp, const QuadratureConfig& cfg,
                                 const ExcessSource& source, UMode mode) {
  if (!(inp.x > 0.0) || !(inp.s > 0.0)) {
    throw DomainError("functional requires x > 0 and s > 0");
  }
  const double T = inp.x * inp.s;
  if (!(T >= 1e4) || T > 1e7) {
    throw DomainError("functional requires x s in [1e4, 1e7], got " + std::to_string(T));
  }
  check_point_on(curve_scale(inp.foci_mode, inp.v, inp.l3), inp.M, "the curve of the chosen foci");
  FunctionalParts f;
  f.T = T;
  f.excess = source(T, inp.v, mode, cfg);
  f.lhs_full_scale = full_scale_lhs(f.excess);
  f.p4 = product_integral(T, 4, inp.M.l1, cfg);
  f.p3 = product_integral(T, 3, inp.M.l2, cfg);
  f.p1 = product_integral(T, 1, inp.l3, cfg);
  const double log_value = 2.4 * positive_log(f.lhs_full_scale, "excess") - positive_log(f.p4, "P4") -
                           positive_log(f.p3, "P3") - 0.2 * positive_log(f.p1, "P1") - std::log(inp.s);
  f.value = std::exp(log_value);
  return f;
}

double functional_value(const FunctionalInput& inp, const QuadratureConfig& cfg, const ExcessSource& source) {
  return functional_parts(inp, cfg, source).value;
}

FactorizationReport factorization_report(double T, double l3, double v, const PointM& M,
                                         const QuadratureConfig& cfg, const ExcessSource& source, UMode mode) {
  check_excess_args(T, v);
  check_point_on(lemniscate_a_bar(v, l3), M, "Lbar[l3, v]");
  FactorizationReport rep;
  rep.T = T;
  rep.excess = source(T, v, mode, cfg);
  rep.lhs = full_scale_lhs(rep.excess);
  rep.factors = {increment_integral(T, 1, cfg), product_integral(T, 1, l3, cfg),
                 product_integral(T, 3, M.l2, cfg), product_integral(T, 4, M.l1, cfg)};
  const char* names[4] = {"I1", "P1", "P3", "P4"};
  double log_rhs = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    log_rhs += factorization_exponents[i] * positive_log(rep.factors[i], names[i]);
  }
  rep.rhs = std::exp(log_rhs);
  return rep;
}

std::pair<double, double> factorization_check(double T, double l3, double v, const PointM& M,
                                              const QuadratureConfig& cfg, const ExcessSource& source) {
  const FactorizationReport r = factorization_report(T, l3, v, M, cfg, source);
  return {r.lhs, r.rhs};
}

}  // namespace ladderlab
