#include <cmath>
#include <random>
#include <string>

#include "ladderlab/cli/dispatch.hpp"
#include "ladderlab/cli/report.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/fermat_scan.hpp"
#include "ladderlab/geometry.hpp"
#include "ladderlab/gram_system.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/zeta_core.hpp"

namespace ladderlab::cli {

namespace {

constexpr const char* input = "input";

double num(const json& p, const char* key) { return p.at(key).get<double>(); }
long integer(const json& p, const char* key) { return p.at(key).get<long>(); }
std::string text(const json& p, const char* key) { return p.at(key).get<std::string>(); }

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw DomainError(what);
  }
}

void require_finite(const json& p, const char* key) {
  require(p.contains(key), std::string("missing parameter ") + key);
  const double v = num(p, key);
  require(std::isfinite(v), std::string(key) + " must be finite");
}

LadderModel model_of(const json& p) { return text(p, "model") == "smooth" ? LadderModel::smooth : LadderModel::exact; }

const char* mode_name(UMode m) { return m == UMode::paper ? "paper" : "capped"; }

// zeta -------------------------------------------------------------------

json run_zeta(const RunConfig& rc) {
  ReportBuilder b("zeta", rc.params);
  b.columns({{"t", input},
             {"z", "Z(t) = exp(i theta(t)) zeta(1/2 + i t)"},
             {"theta", "Riemann-Siegel theta(t)"},
             {"theta1", "theta1(t) = t/2 ln(t/2pi) - t/2 - pi/8"},
             {"theta_gap_48t", "(theta - theta1) 48 t -> 1"},
             {"terms", "main-sum length"}});
  for (const auto& tj : rc.params.at("t")) {
    const double t = tj.get<double>();
    const ZEval e = z(t);
    const double th = theta(t);
    const double th1 = theta1(t);
    b.row({t, e.z, th, th1, theta_correction(t) * 48.0 * t, e.terms_used});
  }
  b.plot("t", {"z"}, "lines");
  return b.build();
}

// gram -------------------------------------------------------------------

json run_gram(const RunConfig& rc) {
  const json& p = rc.params;
  const double T = num(p, "T");
  const double U = num(p, "U");
  const double v = num(p, "v");
  ReportBuilder b("gram", p);
  b.columns({{"parity", input},
             {"T", input},
             {"U", input},
             {"v", input},
             {"nodes", "g-points of one parity in [T, T+U]"},
             {"predicted_nodes", "U ln(T/2pi) / (2pi)"},
             {"pieces", "components of G(v)"},
             {"measure", "m[G(v)]"},
             {"predicted_measure", "m[G(v)] ~ (v/pi) U"}});
  double total = 0.0;
  for (Parity parity : {Parity::even, Parity::odd}) {
    const auto nodes = enumerate_nodes(T, U, parity);
    const DisconnectedSet set = build_set(T, U, v, parity);
    const double m = measure(set);
    total += m;
    b.row({parity == Parity::even ? "even" : "odd", T, U, v, nodes.size(), U * std::log(T / two_pi) / two_pi,
           set.pieces.size(), m, v / pi * U});
  }
  b.summary("measure_sum", total);
  return b.build();
}

// ladder -----------------------------------------------------------------

json run_ladder(const RunConfig& rc, const ResultCache* cache) {
  return cached(cache, "report:ladder", rc.params, rc.cfg, [&] {
    const json& p = rc.params;
    const double T = num(p, "T");
    const int k = static_cast<int>(integer(p, "k"));
    const LadderModel model = model_of(p);
    const bool increments = p.at("increments").get<bool>();
    const ReverseOrbit orbit = reverse_orbit(T, k, model);
    const double predicted_gap = (1.0 - euler_c) * T / std::log(T);
    ReportBuilder b("ladder", p);
    b.columns({{"r", input},
               {"iterate", "T^r with phi1(T^r) = T^{r-1}"},
               {"gap", "T^r - T^{r-1}"},
               {"predicted_gap", "(1-c) T / ln T"},
               {"gap_ratio", "gap / predicted_gap"},
               {"increment", "integral of Z^2 over [T^{r-1}, T^r]"},
               {"predicted_increment", "(1-c) T^{r-1}"},
               {"increment_ratio", "increment / predicted_increment"}});
    for (int r = 0; r <= k; ++r) {
      const double it = orbit.iterates[r];
      if (r == 0) {
        b.row({r, it, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr});
        continue;
      }
      const double gap = it - orbit.iterates[r - 1];
      json inc = nullptr, pred = nullptr, ratio = nullptr;
      if (increments) {
        const double value = integrate_z2(Interval::make(orbit.iterates[r - 1], it), rc.cfg);
        const double expected = (1.0 - euler_c) * orbit.iterates[r - 1];
        inc = value;
        pred = expected;
        ratio = value / expected;
      }
      b.row({r, it, gap, predicted_gap, gap / predicted_gap, inc, pred, ratio});
    }
    const StructureReport s = interval_structure(T, num(p, "l1"), num(p, "l2"), num(p, "l3"), model);
    b.summary("ordering_three_over_one", static_cast<bool>(s.orderings.at(0)));
    b.summary("ordering_four_over_three", static_cast<bool>(s.orderings.at(1)));
    b.summary("ordering_shifted_four", static_cast<bool>(s.orderings.at(2)));
    b.summary("gap_three_one", s.gap_three_one);
    b.summary("predicted_three_one", s.predicted_three_one);
    b.summary("gap_four_three", s.gap_four_three);
    b.summary("predicted_four_three", s.predicted_four_three);
    b.plot("r", {"gap", "predicted_gap"}, "boxes");
    return b.build();
  });
}

// excess -----------------------------------------------------------------

json run_excess(const RunConfig& rc, const ResultCache* cache) {
  return cached(cache, "report:excess", rc.params, rc.cfg, [&] {
    const json& p = rc.params;
    const double T = num(p, "T");
    const long n = integer(p, "n_intervals");
    ReportBuilder b("excess", p);
    b.columns({{"T", input},
               {"v", input},
               {"sin_v", input},
               {"U_used", "window length"},
               {"lhs", "int_G3 Z^2 - int_G4 Z^2"},
               {"main_term", "(4/pi) U sin v"},
               {"rel_dev", "|lhs - main_term| / main_term"},
               {"g3_integral", "int_G3 Z^2 ~ (v/pi) U ln T"},
               {"g4_integral", "int_G4 Z^2 ~ (v/pi) U ln T"},
               {"g3_pieces", "components of G3(v)"},
               {"g4_pieces", "components of G4(v)"}});
    for (const auto& vj : p.at("v")) {
      const double v = vj.get<double>();
      ExcessReport r;
      if (n == default_gram_intervals) {
        r = cached_excess_source(cache)(T, v, rc.u_mode, rc.cfg);
      } else {
        r = excess(T, v, rc.u_mode, rc.cfg, n);
      }
      b.row({T, v, std::sin(v), r.U_used, r.lhs, r.main_term, r.rel_dev, r.g3_integral, r.g4_integral,
             r.g3_pieces, r.g4_pieces});
    }
    b.plot("sin_v", {"lhs", "main_term"});
    return b.build();
  });
}

// product ----------------------------------------------------------------

json run_product(const RunConfig& rc, const ResultCache* cache) {
  return cached(cache, "report:product", rc.params, rc.cfg, [&] {
    const json& p = rc.params;
    const double T = num(p, "T");
    const double l = num(p, "l");
    ReportBuilder b("product", p);
    b.columns({{"T", input},
               {"k", input},
               {"l", input},
               {"value", "int_T^{T+2l} prod_r Z^2(phi1^r(t)) dt"},
               {"predicted", "2 l ln^k T"},
               {"ratio", "value / predicted"}});
    for (const auto& kj : p.at("k")) {
      const int k = kj.get<int>();
      const double value = product_integral(T, k, l, rc.cfg, model_of(p));
      const double predicted = 2.0 * l * std::pow(std::log(T), k);
      b.row({T, k, l, value, predicted, value / predicted});
    }
    b.plot("k", {"ratio"});
    return b.build();
  });
}

// factorize --------------------------------------------------------------

PointM point_on(FociLabel label, double v, double l3, double theta) {
  const double scale = label == FociLabel::F3F4 ? lemniscate_a_bar(v, l3) : lemniscate_a(v, l3);
  return curve_point(family_curve(label, scale), theta);
}

json run_factorize(const RunConfig& rc, const ResultCache* cache) {
  return cached(cache, "report:factorize", rc.params, rc.cfg, [&] {
    const json& p = rc.params;
    const double T = num(p, "T");
    const double l3 = num(p, "l3");
    const double v = num(p, "v");
    const PointM M = point_on(FociLabel::F3F4, v, l3, num(p, "theta"));
    const FactorizationReport f = factorization_report(T, l3, v, M, rc.cfg, cached_excess_source(cache), rc.u_mode);
    ReportBuilder b("factorize", p);
    b.columns({{"T", input},
               {"l3", input},
               {"v", input},
               {"M_l1", "M on Lbar"},
               {"M_l2", "M on Lbar"},
               {"lhs", "excess to the power 12/5"},
               {"rhs", "I1^(5/12) P1^(1/12) P3^(5/12) P4^(5/12) product form"},
               {"ratio", "lhs / rhs -> 1"},
               {"I1", "int_T^{T+2 l3} Z^2"},
               {"P1", "1-fold product integral, l = l3"},
               {"P3", "3-fold product integral, l = l2(M)"},
               {"P4", "4-fold product integral, l = l1(M)"}});
    b.row({T, l3, v, M.l1, M.l2, f.lhs, f.rhs, f.lhs / f.rhs, f.factors[0], f.factors[1], f.factors[2],
           f.factors[3]});
    b.summary("excess_rel_dev", f.excess.rel_dev);
    return b.build();
  });
}

// fermat -----------------------------------------------------------------

json run_fermat(const RunConfig& rc, const ResultCache* cache) {
  return cached(cache, "report:fermat", rc.params, rc.cfg, [&] {
    const json& p = rc.params;
    const FermatRational fr = fermat_value(static_cast<unsigned long>(integer(p, "x")),
                                           static_cast<unsigned long>(integer(p, "y")),
                                           static_cast<unsigned long>(integer(p, "z")),
                                           static_cast<unsigned long>(integer(p, "n")));
    ScanParams sp;
    sp.v = num(p, "v");
    sp.l3 = num(p, "l3");
    sp.theta = num(p, "theta");
    sp.foci = parse_foci_label(text(p, "foci"));
    sp.mode = rc.u_mode;
    sp.cfg = rc.cfg;
    const auto schedule = p.at("schedule").get<std::vector<double>>();
    const ScanVerdict verdict = zeta_scan(fr, schedule, sp, cached_excess_source(cache));
    const std::string exact = fr.exact_num.get_str() + "/" + fr.exact_den.get_str();
    ReportBuilder b("fermat", p);
    b.columns({{"s", input},
               {"T", "height x s"},
               {"value", "limit functional at x = approx"},
               {"approx", "(x^n + y^n) / z^n in floating point"},
               {"exact", "(x^n + y^n) / z^n reduced, integer arithmetic"}});
    for (const auto& [s, value] : verdict.functional_trace) {
      b.row({s, fr.approx * s, value, fr.approx, exact});
    }
    b.summary("triple", json{{"x", fr.x}, {"y", fr.y}, {"z", fr.z}, {"n", fr.n}});
    b.summary("exact", exact);
    b.summary("approx", fr.approx);
    b.summary("extrapolated", verdict.extrapolated);
    b.summary("fit_b", verdict.fit_b);
    b.summary("exact_equals_one", verdict.exact_equals_one);
    b.summary("consistent", verdict.consistent);
    b.summary("band", sp.band);
    b.summary("numeric_inconclusive", verdict.numeric_inconclusive);
    b.summary("note", verdict.note);
    b.plot("s", {"value", "approx"});
    return b.build();
  });
}

// geometry ---------------------------------------------------------------

json run_geometry(const RunConfig& rc) {
  const json& p = rc.params;
  const double v = num(p, "v");
  const double l3 = num(p, "l3");
  const FociLabel label = parse_foci_label(text(p, "foci"));
  const Branch branch = text(p, "branch") == "inner" ? Branch::inner : Branch::outer;
  const double scale = label == FociLabel::F3F4 ? lemniscate_a_bar(v, l3) : lemniscate_a(v, l3);
  const double f5f6 = num(p, "f5f6_factor");
  const CurveSpec spec = family_curve(label, scale, f5f6);

  std::vector<double> thetas = p.at("theta").get<std::vector<double>>();
  const long random = integer(p, "random");
  if (random > 0) {
    std::mt19937_64 rng(rc.seed);
    std::uniform_real_distribution<double> angle(-pi, pi);
    while (static_cast<long>(thetas.size()) < random + static_cast<long>(p.at("theta").size())) {
      const double th = angle(rng);
      try {
        (void)curve_point(spec, th, branch);
        thetas.push_back(th);
      } catch (const NoRealPoint&) {
      }
    }
  }

  ReportBuilder b("geometry", p);
  b.columns({{"theta", input},
             {"x", "point on the curve"},
             {"y", "point on the curve"},
             {"l1", "distance to (+f, 0)"},
             {"l2", "distance to (-f, 0)"},
             {"product", "l1 l2"},
             {"product_expected", "focal product constant"},
             {"rel_err", "|l1 l2 - p| / p"},
             {"condition", label == FociLabel::F3F4 ? "(4/pi sin v)^(12/5) / (8 (1-c) l1 l2 l3) = 1"
                                                    : "(4/pi sin v)^(12/5) / (8 l1 l2 l3) = 1"}});
  for (double th : thetas) {
    const PointM m = curve_point(spec, th, branch);
    const double prod = m.l1 * m.l2;
    const double cond = label == FociLabel::F3F4 ? lemniscate_bar_condition(v, m.l1, m.l2, l3)
                                                 : lemniscate_condition(v, m.l1, m.l2, l3);
    b.row({th, m.x, m.y, m.l1, m.l2, prod, spec.product_const,
           std::abs(prod - spec.product_const) / spec.product_const, cond});
  }
  b.summary("curve", std::string(to_string(spec.kind)));
  b.summary("a", lemniscate_a(v, l3));
  b.summary("a_bar", lemniscate_a_bar(v, l3));
  b.summary("focal_half_distance", spec.focal_half_dist);
  b.plot("x", {"y"}, "points");
  return b.build();
}

}  // namespace

void validate(const RunConfig& rc) {
  rc.cfg.validate();
  require(rc.output_format == "csv" || rc.output_format == "json", "format must be csv or json");
  const json& p = rc.params;
  const std::string& c = rc.command;
  if (c == "zeta") {
    require(!p.at("t").empty(), "zeta needs at least one t");
    for (const auto& t : p.at("t")) {
      require(std::isfinite(t.get<double>()) && t.get<double>() > 0.0 && t.get<double>() <= 1e10,
              "t must lie in (0, 1e10]");
    }
  } else if (c == "gram") {
    for (const char* k : {"T", "U", "v"}) {
      require_finite(p, k);
    }
    require(num(p, "T") >= 100.0, "T must be >= 100");
    require(num(p, "U") >= 0.0 && num(p, "U") <= 1e6, "U must lie in [0, 1e6]");
    require(num(p, "v") > 0.0 && num(p, "v") <= half_pi, "v must lie in (0, pi/2]");
  } else if (c == "ladder") {
    require_finite(p, "T");
    require(num(p, "T") >= 1e4 && num(p, "T") <= 1e7, "T must lie in [1e4, 1e7]");
    require(integer(p, "k") >= 1 && integer(p, "k") <= 8, "k must lie in [1, 8]");
    for (const char* k : {"l1", "l2", "l3"}) {
      require_finite(p, k);
      require(num(p, k) > 0.0, std::string(k) + " must be positive");
    }
  } else if (c == "excess") {
    require_finite(p, "T");
    require(num(p, "T") >= 1e4 && num(p, "T") <= 1e7, "T must lie in [1e4, 1e7]");
    require(!p.at("v").empty(), "excess needs at least one v");
    for (const auto& v : p.at("v")) {
      require(v.get<double>() > 0.0 && v.get<double>() <= half_pi, "v must lie in (0, pi/2]");
    }
    require(integer(p, "n_intervals") >= 1, "n-intervals must be positive");
  } else if (c == "product") {
    require_finite(p, "T");
    require(num(p, "T") > 100.0 && num(p, "T") <= 1e6, "T must lie in (100, 1e6]");
    require_finite(p, "l");
    require(num(p, "l") >= 0.0 && num(p, "l") <= 10.0, "l must lie in [0, 10]");
    require(!p.at("k").empty(), "product needs at least one k");
    for (const auto& k : p.at("k")) {
      require(k.get<int>() >= 1 && k.get<int>() <= 4, "k must lie in [1, 4]");
    }
  } else if (c == "factorize") {
    for (const char* k : {"T", "l3", "v", "theta"}) {
      require_finite(p, k);
    }
    require(num(p, "T") >= 1e4 && num(p, "T") <= 1e6, "T must lie in [1e4, 1e6]");
    require(num(p, "l3") > 0.0, "l3 must be positive");
    require(num(p, "v") > 0.0 && num(p, "v") <= half_pi, "v must lie in (0, pi/2]");
  } else if (c == "fermat") {
    for (const char* k : {"x", "y", "z"}) {
      require(integer(p, k) >= 1, std::string(k) + " must be a natural number");
    }
    require(integer(p, "n") >= 3, "n must be >= 3");
    require(!p.at("schedule").empty(), "schedule must not be empty");
    for (const char* k : {"v", "l3", "theta"}) {
      require_finite(p, k);
    }
    require(num(p, "v") > 0.0 && num(p, "v") <= half_pi, "v must lie in (0, pi/2]");
    require(num(p, "l3") > 0.0, "l3 must be positive");
    (void)parse_foci_label(text(p, "foci"));
  } else if (c == "geometry") {
    for (const char* k : {"v", "l3"}) {
      require_finite(p, k);
    }
    require(num(p, "v") > 0.0 && num(p, "v") <= half_pi, "v must lie in (0, pi/2]");
    require(num(p, "l3") > 0.0, "l3 must be positive");
    require(num(p, "f5f6_factor") == 0.5 || num(p, "f5f6_factor") == 2.0, "f5f6-factor must be 0.5 or 2");
    require(integer(p, "random") >= 0 && integer(p, "random") <= 1000000, "random must lie in [0, 1e6]");
    require(integer(p, "random") > 0 || !p.at("theta").empty(), "geometry needs --theta or --random");
    (void)parse_foci_label(text(p, "foci"));
  } else {
    throw DomainError("unknown command '" + c + "'");
  }
}

json execute(const RunConfig& rc, const ResultCache* cache) {
  validate(rc);
  const std::string& c = rc.command;
  json report;
  if (c == "zeta") {
    report = run_zeta(rc);
  } else if (c == "gram") {
    report = run_gram(rc);
  } else if (c == "ladder") {
    report = run_ladder(rc, cache);
  } else if (c == "excess") {
    report = run_excess(rc, cache);
  } else if (c == "product") {
    report = run_product(rc, cache);
  } else if (c == "factorize") {
    report = run_factorize(rc, cache);
  } else if (c == "fermat") {
    report = run_fermat(rc, cache);
  } else {
    report = run_geometry(rc);
  }
  report["u_mode"] = mode_name(rc.u_mode);
  report["cfg"] = cfg_to_json(rc.cfg);
  report["version"] = code_version();
  return report;
}

}  // namespace ladderlab::cli
