#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ladderlab/excess_lab.hpp"
#include "ladderlab/geometry.hpp"

namespace ladderlab {

// (x^n + y^n) / z^n in lowest terms.
struct FermatRational {
  unsigned long x = 1;
  unsigned long y = 1;
  unsigned long z = 1;
  unsigned long n = 3;
  mpz_class exact_num;
  mpz_class exact_den;
  double approx = 0.0;  // within one ulp of num/den
};

[[nodiscard]] FermatRational fermat_value(unsigned long x, unsigned long y, unsigned long z, unsigned long n);

// x^n + y^n == z^n, by integer arithmetic.
[[nodiscard]] bool exact_equals_one(const FermatRational& fr);

// True iff the value differs from 1.
[[nodiscard]] bool exact_condition(const FermatRational& fr);

// Distinct values over 1 <= x <= x_max, ..., 3 <= n <= n_max; the first
// tuple (in x, y, z, n order) represents each value.
[[nodiscard]] std::vector<FermatRational> enumerate_triples(unsigned long x_max, unsigned long y_max,
                                                           unsigned long z_max, unsigned long n_max);

struct ScanParams {
  double v = 1.5707963267948966;
  double l3 = 0.5;
  double theta = 0.0;  // polar angle of M on the curve
  FociLabel foci = FociLabel::F1F2;
  UMode mode = UMode::paper;
  QuadratureConfig cfg;
  // Relative half-width of the band used for both consistency and
  // distinguishability from 1.
  double band = 0.3;
};

// value(s) ~ a + b / ln(x s); a is the extrapolated limit.
struct InverseLogFit {
  double a = 0.0;
  double b = 0.0;
};

[[nodiscard]] InverseLogFit fit_inverse_log(const std::vector<std::pair<double, double>>& trace, double x);

struct ScanVerdict {
  FermatRational triple;
  std::vector<std::pair<double, double>> functional_trace;  // (s, value)
  double extrapolated = 0.0;
  double fit_b = 0.0;  // value ~ extrapolated * (1 + fit_b / ln(x s))
  bool exact_equals_one = false;  // from integers only
  bool consistent = false;        // |extrapolated - approx| <= band * approx
  // The band around the extrapolated value contains 1, so the numbers
  // alone cannot tell this rational from 1.
  bool numeric_inconclusive = false;
  std::string note;
};

[[nodiscard]] ScanVerdict zeta_scan(const FermatRational& fr, const std::vector<double>& schedule,
                                    const ScanParams& params = {},
                                    const ExcessSource& source = direct_excess_source());

// The point M used by a scan: angle params.theta on the curve of the foci
// family, scaled by a (or abar for F3F4).
[[nodiscard]] PointM scan_point(const ScanParams& params);

}  // namespace ladderlab
