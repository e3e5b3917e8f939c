#include "ladderlab/fermat_scan.hpp"

#include <cmath>
#include <set>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

mpz_class ipow(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

FermatRational fermat_value(unsigned long x, unsigned long y, unsigned long z, unsigned long n) {
  if (x == 0 || y == 0 || z == 0) {
    throw DomainError("Fermat rationals need natural x, y, z");
  }
  if (n < 3) {
    throw DomainError("Fermat rationals need n >= 3");
  }
  FermatRational fr;
  fr.x = x;
  fr.y = y;
  fr.z = z;
  fr.n = n;
  mpq_class q(ipow(x, n) + ipow(y, n), ipow(z, n));
  q.canonicalize();
  fr.exact_num = q.get_num();
  fr.exact_den = q.get_den();
  fr.approx = q.get_d();
  return fr;
}

bool exact_equals_one(const FermatRational& fr) { return fr.exact_num == fr.exact_den; }

bool exact_condition(const FermatRational& fr) { return !exact_equals_one(fr); }

std::vector<FermatRational> enumerate_triples(unsigned long x_max, unsigned long y_max, unsigned long z_max,
                                              unsigned long n_max) {
  if (x_max < 1 || y_max < 1 || z_max < 1 || n_max < 3) {
    throw DomainError("enumerate_triples needs bounds >= 1 and n_max >= 3");
  }
  std::vector<FermatRational> out;
  std::set<std::pair<mpz_class, mpz_class>> seen;
  for (unsigned long x = 1; x <= x_max; ++x) {
    for (unsigned long y = 1; y <= y_max; ++y) {
      for (unsigned long z = 1; z <= z_max; ++z) {
        for (unsigned long n = 3; n <= n_max; ++n) {
          FermatRational fr = fermat_value(x, y, z, n);
          if (seen.emplace(fr.exact_num, fr.exact_den).second) {
            out.push_back(std::move(fr));
          }
        }
      }
    }
  }
  return out;
}

InverseLogFit fit_inverse_log(const std::vector<std::pair<double, double>>& trace, double x) {
  if (trace.empty()) {
    throw DomainError("cannot fit an empty trace");
  }
  if (trace.size() == 1) {
    return {trace.front().second, 0.0};
  }
  // Ordinary least squares in the regressor u = 1 / ln(x s).
  double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
  for (const auto& [s, value] : trace) {
    const double u = 1.0 / std::log(x * s);
    su += u;
    sv += value;
    suu += u * u;
    suv += u * value;
  }
  const double m = static_cast<double>(trace.size());
  const double det = m * suu - su * su;
  if (!(std::abs(det) > 0.0)) {
    throw NumericError(NumericError::Kind::accuracy_unattainable, "degenerate schedule for extrapolation");
  }
  const double b = (m * suv - su * sv) / det;
  const double a = (sv - b * su) / m;
  return {a, b};
}

PointM scan_point(const ScanParams& params) {
  const double scale =
      params.foci == FociLabel::F3F4 ? lemniscate_a_bar(params.v, params.l3) : lemniscate_a(params.v, params.l3);
  return curve_point(family_curve(params.foci, scale), params.theta);
}

ScanVerdict zeta_scan(const FermatRational& fr, const std::vector<double>& schedule, const ScanParams& params,
                      const ExcessSource& source) {
  if (schedule.empty()) {
    throw DomainError("zeta_scan needs a non-empty schedule");
  }
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] > schedule[i - 1])) {
      throw DomainError("zeta_scan schedule must be strictly increasing");
    }
  }
  const double x = fr.approx;
  if (x * schedule.front() < 1e4 || x * schedule.back() > 1e7) {
    throw DomainError("zeta_scan: x s must stay within [1e4, 1e7] over the schedule");
  }
  ScanVerdict verdict;
  verdict.triple = fr;
  FunctionalInput in;
  in.x = x;
  in.v = params.v;
  in.l3 = params.l3;
  in.foci_mode = params.foci;
  in.M = scan_point(params);
  for (double s : schedule) {
    in.s = s;
    verdict.functional_trace.emplace_back(s, functional_parts(in, params.cfg, source, params.mode).value);
  }
  const InverseLogFit fit = fit_inverse_log(verdict.functional_trace, x);
  verdict.extrapolated = fit.a;
  verdict.fit_b = fit.a != 0.0 ? fit.b / fit.a : 0.0;
  verdict.exact_equals_one = exact_equals_one(fr);
  verdict.consistent = std::abs(verdict.extrapolated - x) <= params.band * x;
  verdict.numeric_inconclusive = std::abs(verdict.extrapolated - 1.0) <= params.band * std::abs(verdict.extrapolated);
  const std::string exact = verdict.exact_equals_one ? "equals 1" : "differs from 1";
  verdict.note = "exact verdict from integer arithmetic: value " + exact + "; numeric trace " +
                 (verdict.numeric_inconclusive ? "inconclusive at desk tolerance (band contains 1)"
                                               : "separates the value from 1") +
                 "; the trace is evidence of convergence only, never a verdict";
  return verdict;
}

}  // namespace ladderlab
