#pragma once

#include <string>
#include <string_view>

#include "ladderlab/errors.hpp"

namespace ladderlab {

// Locus |F+ M| |F- M| = p with foci (+-f, 0):
//   lemniscate     f^2 = p
//   cassini_gamma  f^2 < p   (one oval around both foci)
//   cassini_beta   f^2 > p   (two ovals, one around each focus)
enum class CurveKind { lemniscate, cassini_gamma, cassini_beta };

// Which root r^2 of r^4 - 2 f^2 r^2 cos 2theta + f^4 - p^2 = 0 to take.
// Only beta ovals have two positive roots; inner is rejected elsewhere.
enum class Branch { outer, inner };

enum class FociLabel { F1F2, F3F4, F5F6, F7F8, F9F10 };

struct CurveSpec {
  double product_const = 1.0;    // p
  double focal_half_dist = 1.0;  // f
  CurveKind kind = CurveKind::lemniscate;
};

// Classifies by comparing f^2 with p; equality to 1e-12 relative counts as
// a lemniscate.
[[nodiscard]] CurveSpec make_curve(double product_const, double focal_half_dist);

struct PointM {
  double x = 0.0;
  double y = 0.0;
  double l1 = 0.0;  // distance to (+f, 0)
  double l2 = 0.0;  // distance to (-f, 0)
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct FociFamily {
  FociLabel label = FociLabel::F1F2;
  double half_distance = 0.0;
  Point2 plus;
  Point2 minus;
};

class NoRealPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

// a = (4/pi sin v)^{6/5} (1/(8 l3))^{1/2}
[[nodiscard]] double lemniscate_a(double v, double l3);

// abar = a / sqrt(1 - c)
[[nodiscard]] double lemniscate_a_bar(double v, double l3);

// Point on the curve at polar angle theta about the centre.
[[nodiscard]] PointM curve_point(const CurveSpec& spec, double theta, Branch branch = Branch::outer);

// Foci at (+-d, 0): d = scale for F1F2 and F3F4 (scale = a resp. abar),
// scale/2 for F7F8, 2 scale for F9F10, and f5f6_factor * scale for F5F6
// (factor 1/2 or 2).
[[nodiscard]] FociFamily foci(FociLabel label, double scale, double f5f6_factor = 0.5);

// Curve with product constant scale^2 and the foci of the family.
[[nodiscard]] CurveSpec family_curve(FociLabel label, double scale, double f5f6_factor = 0.5);

[[nodiscard]] std::string_view to_string(FociLabel label);
[[nodiscard]] FociLabel parse_foci_label(std::string_view text);
[[nodiscard]] std::string_view to_string(CurveKind kind);

// (4/pi sin v)^{12/5} / (8 l1 l2 l3): equals 1 exactly on L[l3, v].
[[nodiscard]] double lemniscate_condition(double v, double l1, double l2, double l3);

// (4/pi sin v)^{12/5} / (8 (1 - c) l1 l2 l3): equals 1 on Lbar[l3, v].
[[nodiscard]] double lemniscate_bar_condition(double v, double l1, double l2, double l3);

}  // namespace ladderlab
