// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion 5   one criterion (repeatable)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ladderlab/cli/cache.hpp"
#include "ladderlab/cli/dispatch.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/excess_lab.hpp"
#include "ladderlab/fermat_scan.hpp"
#include "ladderlab/geometry.hpp"
#include "ladderlab/gram_system.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/zeta_core.hpp"
#include "zeta_oracle.hpp"

using namespace ladderlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  [[nodiscard]] std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

struct Context {
  cli::ResultCache cache{cli::default_cache_dir()};
  ExcessSource source() const { return cli::cached_excess_source(&cache); }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome z_oracle(Context&) {
  double worst = 0.0, at = 0.0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double t = 10.0 * std::pow(1e5, static_cast<double>(i) / (n - 1));
    const double err = std::abs(z_value(t) - oracle::hardy_z(t));
    if (err > worst) {
      worst = err;
      at = t;
    }
  }
  return {worst <= 1e-8, "max |Z - oracle| = " + fmt(worst, 3) + " at t = " + fmt(at, 7) + " (tol 1e-8)"};
}

// 2 -------------------------------------------------------------------------
Outcome theta_expansion(Context&) {
  double lo = INFINITY, hi = -INFINITY, worst_vs_oracle = 0.0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const double t = 50.0 * std::pow(2e4, static_cast<double>(i) / (n - 1));
    const double scaled = theta_correction(t) * 48.0 * t;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    worst_vs_oracle =
        std::max(worst_vs_oracle, std::abs(scaled - oracle::theta_minus_theta1(t) * 48.0 * t));
  }
  const bool pass = lo >= 0.9 && hi <= 1.1 && worst_vs_oracle <= 1e-6;
  return {pass, "(theta - theta1) 48t in [" + fmt(lo, 8) + ", " + fmt(hi, 8) +
                    "], max deviation from high-precision difference " + fmt(worst_vs_oracle, 3)};
}

// 3 -------------------------------------------------------------------------
Outcome gram_count(Context&) {
  const double U = 1e3;
  bool pass = true;
  Detail d;
  for (double T : {1e4, 1e6}) {
    const double predicted = U * std::log(T / two_pi) / two_pi;
    for (Parity p : {Parity::even, Parity::odd}) {
      const double count = static_cast<double>(enumerate_nodes(T, U, p).size());
      const bool ok = std::abs(count - predicted) <= 2.0;
      pass = pass && ok;
      d << "T=" << fmt(T, 2) << (p == Parity::even ? " even " : " odd ") << count << " vs " << fmt(predicted, 6)
        << (ok ? "; " : " (off by more than 2); ");
    }
  }
  return {pass, d.str()};
}

// 4 -------------------------------------------------------------------------
Outcome measure_laws(Context&) {
  const double T = 1e6;
  const double U = window_width(T, UMode::capped);
  const double lnT = std::log(T);
  bool pass = true;
  Detail d;
  d << "U=" << fmt(U, 6) << "; ";
  for (double v : {pi / 6, pi / 4, pi / 3, half_pi}) {
    const double m = measure(build_set(T, U, v, Parity::even));
    const double dev = std::abs(m - v / pi * U);
    pass = pass && dev <= 10.0 * v / lnT;
    d << "|m[G3(" << fmt(v, 3) << ")] - vU/pi| = " << fmt(dev, 3) << " (<= " << fmt(10.0 * v / lnT, 3) << "); ";
  }
  const double both =
      measure(build_set(T, U, half_pi, Parity::even)) + measure(build_set(T, U, half_pi, Parity::odd));
  pass = pass && std::abs(both - U) <= 10.0 / lnT;
  d << "m[G3bar]+m[G4bar]-U = " << fmt(both - U, 3) << " (<= " << fmt(10.0 / lnT, 3) << ")";
  return {pass, d.str()};
}

const std::vector<double>& sweep_v() {
  static const std::vector<double> v{pi / 6, pi / 4, pi / 3, half_pi};
  return v;
}

// 5 -------------------------------------------------------------------------
Outcome excess_formula(Context& ctx) {
  const double T = 1e6;
  const auto src = ctx.source();
  const ExcessReport main = src(T, half_pi, UMode::capped, {});
  double lo = INFINITY, hi = -INFINITY;
  for (double v : sweep_v()) {
    const ExcessReport r = src(T, v, UMode::capped, {});
    const double k = r.lhs / std::sin(v);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  const double spread = hi / lo - 1.0;
  const bool pass = main.rel_dev <= 3.0 / std::log(T) && spread <= 0.2;
  return {pass, "rel_dev = " + fmt(main.rel_dev, 3) + " (<= " + fmt(3.0 / std::log(T), 3) +
                    "); lhs/sin v spread over v = " + fmt(spread, 3) + " (<= 0.2)"};
}

// 6 -------------------------------------------------------------------------
Outcome both_integrals_size(Context& ctx) {
  const double T = 1e6;
  const auto src = ctx.source();
  bool pass = true;
  Detail d;
  for (double v : sweep_v()) {
    const ExcessReport r = src(T, v, UMode::capped, {});
    const double main = v / pi * r.U_used * std::log(T);
    const double a = r.g3_integral / main;
    const double b = r.g4_integral / main;
    pass = pass && std::abs(a - 1.0) <= 0.25 && std::abs(b - 1.0) <= 0.25;
    d << "v=" << fmt(v, 3) << ": G3 " << fmt(a, 4) << ", G4 " << fmt(b, 4) << "; ";
  }
  return {pass, d.str() + "ratios to (v/pi) U ln T, tol 25%"};
}

// 7 -------------------------------------------------------------------------
Outcome ladder_properties(Context&) {
  bool pass = true;
  Detail d;
  for (double T : {1e4, 1e5, 1e6}) {
    const double t1 = reverse_iterate(T, 1);
    const double residual = std::abs(phi1(t1) - T);
    pass = pass && residual <= 1e-8 * T;
    d << "residual(" << fmt(T, 2) << ") = " << fmt(residual, 3) << "; ";
  }
  const ReverseOrbit orbit = reverse_orbit(1e6, 4);
  const bool increasing = std::is_sorted(orbit.iterates.begin(), orbit.iterates.end(), std::less_equal<>()) &&
                          std::adjacent_find(orbit.iterates.begin(), orbit.iterates.end()) == orbit.iterates.end();
  pass = pass && increasing;
  d << (increasing ? "orbit increasing; " : "orbit NOT increasing; ");

  const double r5 = increment_integral(1e5, 1) / ((1.0 - euler_c) * 1e5);
  pass = pass && r5 >= 0.9 && r5 <= 1.1;
  d << "increment ratio 1e5 = " << fmt(r5, 5) << "; ";

  std::vector<double> inc;
  for (int r = 1; r <= 4; ++r) {
    inc.push_back(integrate_z2(Interval::make(orbit.iterates[r - 1], orbit.iterates[r])));
  }
  const double r6 = inc[0] / ((1.0 - euler_c) * 1e6);
  pass = pass && r6 >= 0.93 && r6 <= 1.07;
  d << "1e6 = " << fmt(r6, 5) << "; consecutive:";
  for (std::size_t i = 1; i < inc.size(); ++i) {
    const double q = inc[i] / inc[i - 1];
    pass = pass && std::abs(q - 1.0) <= 0.15;
    d << " " << fmt(q, 4);
  }
  return {pass, d.str()};
}

// 8 -------------------------------------------------------------------------
double cached_product(Context& ctx, double T, int k) {
  const cli::json params{{"T", T}, {"k", k}, {"l", 1.0}};
  return cli::cached(&ctx.cache, "product_integral", params, {}, [&] {
    return cli::json(product_integral(T, k, 1.0));
  }).get<double>();
}

Outcome product_law(Context& ctx) {
  auto ratio = [&](double T, int k) { return cached_product(ctx, T, k) / (2.0 * std::pow(std::log(T), k)); };
  bool pass = true;
  Detail d;
  d << "T=1e5:";
  for (int k = 1; k <= 4; ++k) {
    const double r = ratio(1e5, k);
    pass = pass && r >= 0.5 && r <= 2.0;
    d << " k" << k << "=" << fmt(r, 4);
  }
  for (int k = 1; k <= 2; ++k) {
    const double a = ratio(1e4, k);
    const double b = ratio(1e6, k);
    pass = pass && std::abs(b - 1.0) < std::abs(a - 1.0);
    d << "; k" << k << " 1e4 " << fmt(a, 4) << " -> 1e6 " << fmt(b, 4);
  }
  return {pass, d.str()};
}

// 9 -------------------------------------------------------------------------
Outcome interval_structure_check(Context&) {
  bool pass = true;
  Detail d;
  for (double T : {1e4, 1e5, 1e6}) {
    const StructureReport s = interval_structure(T, 1.0, 1.0, 1.0);
    const double margin = 0.5 * (1.0 - euler_c) * T / std::log(T);
    const double q31 = s.gap_three_one / s.predicted_three_one;
    const double q43 = s.gap_four_three / s.predicted_four_three;
    const bool ok = s.orderings.at(0) && s.orderings.at(1) && s.gap_three_one >= margin &&
                    s.gap_four_three >= margin && std::abs(q31 - 1.0) <= 0.3 && std::abs(q43 - 1.0) <= 0.3;
    pass = pass && ok;
    d << "T=" << fmt(T, 2) << ": gaps/predicted " << fmt(q31, 4) << ", " << fmt(q43, 4) << "; ";
  }
  return {pass, d.str() + "orderings and margins checked"};
}

// 10 ------------------------------------------------------------------------
Outcome geometry_invariants(Context&) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> vdist(0.05, half_pi);
  std::uniform_real_distribution<double> ldist(0.1, 10.0);
  std::uniform_real_distribution<double> angle(-pi, pi);
  struct Family {
    const char* name;
    FociLabel label;
    Branch branch;
  };
  const Family families[] = {{"L", FociLabel::F1F2, Branch::outer},
                             {"Lbar", FociLabel::F3F4, Branch::outer},
                             {"O1", FociLabel::F7F8, Branch::outer},
                             {"O2", FociLabel::F9F10, Branch::outer},
                             {"O2 inner", FociLabel::F9F10, Branch::inner}};
  bool pass = true;
  Detail d;
  for (const Family& f : families) {
    double worst = 0.0, worst_cond = 0.0;
    int done = 0;
    while (done < 10000) {
      const double v = vdist(rng);
      const double l3 = ldist(rng);
      const double scale = f.label == FociLabel::F3F4 ? lemniscate_a_bar(v, l3) : lemniscate_a(v, l3);
      const CurveSpec spec = family_curve(f.label, scale);
      PointM m;
      try {
        m = curve_point(spec, angle(rng), f.branch);
      } catch (const NoRealPoint&) {
        continue;
      }
      ++done;
      worst = std::max(worst, std::abs(m.l1 * m.l2 - spec.product_const) / spec.product_const);
      if (f.label == FociLabel::F1F2) {
        worst_cond = std::max(worst_cond, std::abs(lemniscate_condition(v, m.l1, m.l2, l3) - 1.0));
      } else if (f.label == FociLabel::F3F4) {
        worst_cond = std::max(worst_cond, std::abs(lemniscate_bar_condition(v, m.l1, m.l2, l3) - 1.0));
      }
    }
    pass = pass && worst <= 1e-12 && worst_cond <= 1e-12;
    d << f.name << " " << fmt(worst, 2);
    if (f.label == FociLabel::F1F2 || f.label == FociLabel::F3F4) {
      d << " (condition " << fmt(worst_cond, 2) << ")";
    }
    d << "; ";
  }
  return {pass, d.str() + "worst relative focal-product error, tol 1e-12"};
}

// 11 ------------------------------------------------------------------------
Outcome functional_trend(Context& ctx) {
  FunctionalInput in;
  in.x = 1.0;
  in.M = scan_point(ScanParams{});
  std::vector<double> values;
  Detail d;
  for (double s : {1e4, 1e5, 1e6}) {
    in.s = s;
    values.push_back(functional_parts(in, {}, ctx.source(), UMode::paper).value);
    d << "s=" << fmt(s, 2) << ": " << fmt(values.back(), 5) << "; ";
  }
  bool pass = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    pass = pass && std::isfinite(values[i]) && values[i] > 0.0;
    if (i > 0) {
      pass = pass && std::abs(values[i] - 1.0) <= std::abs(values[i - 1] - 1.0);
    }
  }
  pass = pass && values.back() >= 0.4 && values.back() <= 2.5;
  return {pass, d.str() + "|value - 1| non-increasing, final in [0.4, 2.5]"};
}

// 12 ------------------------------------------------------------------------
Outcome fermat_honesty(Context& ctx) {
  const FermatRational two = fermat_value(1, 1, 1, 3);
  const ScanVerdict a = zeta_scan(two, {5e3, 5e4, 5e5}, ScanParams{}, ctx.source());
  const FermatRational near = fermat_value(6, 8, 9, 3);
  const ScanVerdict b = zeta_scan(near, {2e4, 2e5, 1e6}, ScanParams{}, ctx.source());
  const bool pass = a.extrapolated >= 1.4 && a.extrapolated <= 2.6 && !a.exact_equals_one &&
                    b.numeric_inconclusive && b.note.find("inconclusive") != std::string::npos &&
                    !b.exact_equals_one;
  return {pass, "(1,1,1,3) extrapolated " + fmt(a.extrapolated, 5) + ", exact 2/1; (6,8,9,3) extrapolated " +
                    fmt(b.extrapolated, 5) + (b.numeric_inconclusive ? " marked inconclusive" : " NOT marked") +
                    ", exact " + b.triple.exact_num.get_str() + "/" + b.triple.exact_den.get_str()};
}

// 13 ------------------------------------------------------------------------
Outcome factorization_trend(Context& ctx) {
  const double v = half_pi;
  const double l3 = 0.5;
  const PointM M = curve_point(family_curve(FociLabel::F3F4, lemniscate_a_bar(v, l3)), 0.0);
  std::map<double, double> ratio;
  for (double T : {1e4, 1e5, 1e6}) {
    const auto [lhs, rhs] = factorization_check(T, l3, v, M, {}, ctx.source());
    ratio[T] = lhs / rhs;
  }
  const bool pass = ratio[1e5] >= 0.5 && ratio[1e5] <= 2.0 &&
                    std::abs(ratio[1e6] - 1.0) < std::abs(ratio[1e4] - 1.0);
  return {pass, "LHS/RHS at 1e4, 1e5, 1e6: " + fmt(ratio[1e4], 5) + ", " + fmt(ratio[1e5], 5) + ", " +
                    fmt(ratio[1e6], 5)};
}

// 14 ------------------------------------------------------------------------
Outcome plumbing(Context&) {
  const fs::path dir = fs::temp_directory_path() / "ladderlab-acceptance-plumbing";
  fs::remove_all(dir);
  const std::vector<std::string> args{"excess", "--T", "1e4", "--v", "0.5,1.5708", "--cache-dir", dir.string()};
  const auto cold = cli::dispatch(args);
  const auto warm = cli::dispatch(args);
  fs::remove_all(dir);
  const bool same = cold.exit_code == 0 && warm.exit_code == 0 && !cold.out.empty() && cold.out == warm.out;

  QuadratureConfig base;
  QuadratureConfig doubled = base;
  doubled.points_per_oscillation *= 2;
  double worst = 0.0;
  for (const Interval iv : {Interval::make(1e4, 1e4 + 200.0), Interval::make(1e6, 1e6 + 50.0)}) {
    worst = std::max(worst, std::abs(integrate_z2(iv, base) - integrate_z2(iv, doubled)));
  }
  const bool pass = same && worst <= 2.0 * base.abs_tol;
  return {pass, std::string(same ? "cold and cached reports identical" : "cold and cached reports DIFFER") +
                    "; node doubling changes integrals by " + fmt(worst, 3) + " (<= " +
                    fmt(2.0 * base.abs_tol, 2) + ")"};
}

struct Entry {
  int id;
  const char* name;
  Outcome (*run)(Context&);
};

const Entry criteria[] = {
    {1, "Z oracle agreement", z_oracle},
    {2, "theta expansion", theta_expansion},
    {3, "g-point count", gram_count},
    {4, "measure laws", measure_laws},
    {5, "excess formula", excess_formula},
    {6, "both integrals", both_integrals_size},
    {7, "ladder properties", ladder_properties},
    {8, "product-integral law", product_law},
    {9, "interval structure", interval_structure_check},
    {10, "geometry invariants", geometry_invariants},
    {11, "limit functional trend", functional_trend},
    {12, "Fermat scan honesty", fermat_honesty},
    {13, "factorization trend", factorization_trend},
    {14, "plumbing", plumbing},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("ladderlab acceptance criteria");
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s)")->delimiter(',')->check(CLI::Range(1, 14));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) {
    for (const Entry& e : criteria) {
      selected.push_back(e.id);
    }
  }

  Context ctx;
  set_hardy_cache_dir(ctx.cache.dir());
  bool all = true;
  for (int id : selected) {
    const Entry& e = criteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run(ctx);
    } catch (const std::exception& ex) {
      o = {false, std::string("error: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %-24s %s  [%.1f s]\n", e.id, o.pass ? "PASS" : "FAIL", e.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
