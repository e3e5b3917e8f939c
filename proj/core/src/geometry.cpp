#include "ladderlab/geometry.hpp"

#include <cmath>

#include "ladderlab/constants.hpp"

namespace ladderlab {

namespace {

void check_params(double v, double l3) {
  if (!(v > 0.0) || v > half_pi) {
    throw DomainError("v must lie in (0, pi/2]");
  }
  if (!(l3 > 0.0) || !std::isfinite(l3)) {
    throw DomainError("l3 must be positive");
  }
}

double sin_factor(double v) { return 4.0 / pi * std::sin(v); }

}  // namespace

CurveSpec make_curve(double product_const, double focal_half_dist) {
  if (!(product_const > 0.0) || !std::isfinite(product_const) || !(focal_half_dist > 0.0) ||
      !std::isfinite(focal_half_dist)) {
    throw DomainError("curve needs a positive product constant and focal distance");
  }
  CurveSpec s{product_const, focal_half_dist, CurveKind::lemniscate};
  const double f2 = focal_half_dist * focal_half_dist;
  if (std::abs(f2 - product_const) <= 1e-12 * product_const) {
    s.kind = CurveKind::lemniscate;
  } else {
    s.kind = f2 < product_const ? CurveKind::cassini_gamma : CurveKind::cassini_beta;
  }
  return s;
}

double lemniscate_a(double v, double l3) {
  check_params(v, l3);
  return std::pow(sin_factor(v), 1.2) * std::sqrt(1.0 / (8.0 * l3));
}

double lemniscate_a_bar(double v, double l3) {
  check_params(v, l3);
  return std::pow(sin_factor(v), 1.2) * std::sqrt(1.0 / (8.0 * (1.0 - euler_c) * l3));
}

PointM curve_point(const CurveSpec& spec, double theta, Branch branch) {
  const double p = spec.product_const;
  const double f = spec.focal_half_dist;
  if (!(p > 0.0) || !(f > 0.0)) {
    throw DomainError("invalid curve");
  }
  if (!std::isfinite(theta)) {
    throw DomainError("theta must be finite");
  }
  const double f2 = f * f;
  const double c2 = std::cos(2.0 * theta);
  const double s2 = std::sin(2.0 * theta);
  double r2 = 0.0;
  if (spec.kind == CurveKind::lemniscate) {
    // Only the rays with cos 2theta >= 0 carry the loops; elsewhere the
    // sole solution is the node at the origin, which we do not return.
    if (c2 < 0.0) {
      throw NoRealPoint("no lemniscate point off the loops (cos 2theta < 0)");
    }
    if (branch == Branch::inner) {
      throw DomainError("the lemniscate has a single branch per ray");
    }
    r2 = 2.0 * f2 * c2;
  } else {
    const double radicand = (p - f2 * s2) * (p + f2 * s2);
    if (radicand < 0.0) {
      throw NoRealPoint("ray misses the Cassini oval");
    }
    const double root = std::sqrt(radicand);
    const double outer = f2 * c2 + root;
    if (outer <= 0.0) {
      throw NoRealPoint("ray misses the Cassini oval");
    }
    if (branch == Branch::outer) {
      r2 = outer;
    } else {
      if (spec.kind != CurveKind::cassini_beta) {
        throw DomainError("inner branch exists only for two-oval curves");
      }
      // Product of the roots is f^4 - p^2; avoids cancellation.
      r2 = (f2 - p) * (f2 + p) / outer;
    }
  }
  const double r = std::sqrt(r2);
  PointM m;
  m.x = r * std::cos(theta);
  m.y = r * std::sin(theta);
  m.l1 = std::hypot(m.x - f, m.y);
  m.l2 = std::hypot(m.x + f, m.y);
  return m;
}

FociFamily foci(FociLabel label, double scale, double f5f6_factor) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("foci scale must be positive");
  }
  double d = scale;
  switch (label) {
    case FociLabel::F1F2:
    case FociLabel::F3F4:
      d = scale;
      break;
    case FociLabel::F5F6:
      if (f5f6_factor != 0.5 && f5f6_factor != 2.0) {
        throw DomainError("F5F6 focal factor must be 1/2 or 2");
      }
      d = f5f6_factor * scale;
      break;
    case FociLabel::F7F8:
      d = 0.5 * scale;
      break;
    case FociLabel::F9F10:
      d = 2.0 * scale;
      break;
    default:
      throw DomainError("unknown foci family");
  }
  return FociFamily{label, d, Point2{d, 0.0}, Point2{-d, 0.0}};
}

CurveSpec family_curve(FociLabel label, double scale, double f5f6_factor) {
  const FociFamily fam = foci(label, scale, f5f6_factor);
  CurveSpec s = make_curve(scale * scale, fam.half_distance);
  if (label == FociLabel::F1F2 || label == FociLabel::F3F4) {
    s.kind = CurveKind::lemniscate;
  }
  return s;
}

std::string_view to_string(FociLabel label) {
  switch (label) {
    case FociLabel::F1F2: return "F1F2";
    case FociLabel::F3F4: return "F3F4";
    case FociLabel::F5F6: return "F5F6";
    case FociLabel::F7F8: return "F7F8";
    case FociLabel::F9F10: return "F9F10";
  }
  return "?";
}

FociLabel parse_foci_label(std::string_view text) {
  for (FociLabel l : {FociLabel::F1F2, FociLabel::F3F4, FociLabel::F5F6, FociLabel::F7F8, FociLabel::F9F10}) {
    if (text == to_string(l)) {
      return l;
    }
  }
  throw DomainError("unknown foci family '" + std::string(text) + "'");
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::lemniscate: return "lemniscate";
    case CurveKind::cassini_gamma: return "cassini_gamma";
    case CurveKind::cassini_beta: return "cassini_beta";
  }
  return "?";
}

double lemniscate_condition(double v, double l1, double l2, double l3) {
  check_params(v, l3);
  // log space keeps the power exact to rounding for any magnitude.
  return std::exp(2.4 * std::log(sin_factor(v)) - std::log(8.0 * l1 * l2 * l3));
}

double lemniscate_bar_condition(double v, double l1, double l2, double l3) {
  check_params(v, l3);
  return std::exp(2.4 * std::log(sin_factor(v)) - std::log(8.0 * (1.0 - euler_c) * l1 * l2 * l3));
}

}  // namespace ladderlab
