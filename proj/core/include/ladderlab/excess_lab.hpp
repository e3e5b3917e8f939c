#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <utility>

#include "ladderlab/geometry.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/quadrature.hpp"

namespace ladderlab {

// paper:  U(T) = T^{5/12} ln^3 T.
// capped: a window spanning n_target Gram intervals (theta1 rises by
//         n_target * pi); the predicted excess scales with the window.
enum class UMode { paper, capped };

inline constexpr long default_gram_intervals = 10000;

struct ExcessReport {
  double T = 0.0;
  double U_used = 0.0;
  UMode u_mode = UMode::capped;
  double v = 0.0;
  double lhs = 0.0;        // g3_integral - g4_integral
  double main_term = 0.0;  // (4/pi) U sin v
  double rel_dev = 0.0;    // |lhs - main_term| / main_term
  double g3_integral = 0.0;
  double g4_integral = 0.0;
  std::size_t g3_pieces = 0;
  std::size_t g4_pieces = 0;
};

// T^{5/12} ln^3 T
[[nodiscard]] double u_of(double T);

// Width of the window starting at T used by the given mode.
[[nodiscard]] double window_width(double T, UMode mode, long n_target = default_gram_intervals);

[[nodiscard]] ExcessReport excess(double T, double v, UMode mode = UMode::capped,
                                  const QuadratureConfig& cfg = {}, long n_target = default_gram_intervals);

// (integral over G3(v), integral over G4(v)).
[[nodiscard]] std::pair<double, double> both_integrals(double T, double v, UMode mode = UMode::capped,
                                                       const QuadratureConfig& cfg = {});

// Where excess values come from; lets callers put a cache in front of the
// expensive full-window runs.
using ExcessSource = std::function<ExcessReport(double T, double v, UMode mode, const QuadratureConfig& cfg)>;

[[nodiscard]] ExcessSource direct_excess_source();

// Integral over [[T]^k, [T+2l]^k] of prod_{r=0}^{k-1} Z^2(phi1^r(t)).
[[nodiscard]] double product_integral(double T, int k, double l, const QuadratureConfig& cfg = {},
                                      LadderModel model = LadderModel::exact);

// T * P4(|F1 M|) * P3(|F2 M|) * P1(l3)^{1/5} with P_k the product integrals.
// M must lie on L[l3, v].
[[nodiscard]] double identity_rhs(double T, double l3, double v, const PointM& M,
                                  const QuadratureConfig& cfg = {});

struct FunctionalInput {
  double x = 1.0;  // the value the functional tends to
  double s = 1e4;  // scale; evaluated at height T = x s
  double v = 1.5707963267948966;
  double l3 = 0.5;
  PointM M;        // l1, l2 measured from the foci of foci_mode
  FociLabel foci_mode = FociLabel::F1F2;
};

struct FunctionalParts {
  double T = 0.0;
  ExcessReport excess;
  double lhs_full_scale = 0.0;  // excess rescaled to the full window
  double p4 = 0.0;               // 4-fold product integral, l = M.l1
  double p3 = 0.0;               // 3-fold product integral, l = M.l2
  double p1 = 0.0;               // 1-fold, l = l3
  double value = 0.0;
};

// Finite-scale value of the limit functional:
//   excess^{12/5} / (P4 P3 P1^{1/5}) / s.
[[nodiscard]] FunctionalParts functional_parts(const FunctionalInput& inp, const QuadratureConfig& cfg = {},
                                               const ExcessSource& source = direct_excess_source(),
                                               UMode mode = UMode::paper);

[[nodiscard]] double functional_value(const FunctionalInput& inp, const QuadratureConfig& cfg = {},
                                      const ExcessSource& source = direct_excess_source());

// Exponents applied to (I1, P1(l3), P3(|F4 M|), P4(|F3 M|)), in that order.
inline constexpr std::array<double, 4> factorization_exponents = {5.0 / 12.0, 1.0 / 12.0, 5.0 / 12.0,
                                                                  5.0 / 12.0};

struct FactorizationReport {
  double T = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  // I1 = integral over [T, [T]^1], P1(l3), P3(|F4 M|), P4(|F3 M|).
  std::array<double, 4> factors{};
  ExcessReport excess;
};

// M must lie on Lbar[l3, v] (foci +-abar); M.l1 = |F3 M|, M.l2 = |F4 M|.
[[nodiscard]] FactorizationReport factorization_report(double T, double l3, double v, const PointM& M,
                                                       const QuadratureConfig& cfg = {},
                                                       const ExcessSource& source = direct_excess_source(),
                                                       UMode mode = UMode::paper);

[[nodiscard]] std::pair<double, double> factorization_check(double T, double l3, double v, const PointM& M,
                                                            const QuadratureConfig& cfg = {},
                                                            const ExcessSource& source = direct_excess_source());

// p^{12/5} through exp/log, as used for every power above.
[[nodiscard]] double power_12_5(double p);

}  // namespace ladderlab
