#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ladderlab/errors.hpp"
#include "ladderlab/fermat_scan.hpp"

using namespace ladderlab;

namespace {

std::string as_string(const FermatRational& fr) {
  return fr.exact_num.get_str() + "/" + fr.exact_den.get_str();
}

ScanParams quick_params() {
  ScanParams p;
  p.mode = UMode::capped;
  return p;
}

}  // namespace

TEST(FermatValue, Examples) {
  const FermatRational a = fermat_value(1, 1, 1, 3);
  EXPECT_EQ(as_string(a), "2/1");
  EXPECT_FALSE(exact_equals_one(a));
  EXPECT_TRUE(exact_condition(a));

  const FermatRational b = fermat_value(6, 8, 9, 3);
  EXPECT_EQ(as_string(b), "728/729");
  EXPECT_NEAR(b.approx, 0.998628, 1e-6);
  EXPECT_TRUE(exact_condition(b));

  EXPECT_EQ(as_string(fermat_value(2, 2, 2, 4)), "2/1");
}

TEST(FermatValue, RejectsOutsideDomain) {
  EXPECT_THROW((void)fermat_value(3, 4, 5, 2), DomainError);
  EXPECT_THROW((void)fermat_value(0, 1, 1, 3), DomainError);
  EXPECT_THROW((void)fermat_value(1, 0, 1, 3), DomainError);
  EXPECT_THROW((void)fermat_value(1, 1, 0, 3), DomainError);
}

TEST(FermatValue, RandomTriplesExactAndWithinUlp) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<unsigned long> side(1, 50);
  std::uniform_int_distribution<unsigned long> power(3, 12);
  for (int i = 0; i < 100000; ++i) {
    const FermatRational fr = fermat_value(side(rng), side(rng), side(rng), power(rng));
    ASSERT_FALSE(exact_equals_one(fr));
    ASSERT_EQ(gcd(fr.exact_num, fr.exact_den), 1);
    const mpq_class exact(fr.exact_num, fr.exact_den);
    const mpq_class err = abs(mpq_class(fr.approx) - exact);
    const double ulp = std::nextafter(fr.approx, INFINITY) - fr.approx;
    ASSERT_LE(err, mpq_class(ulp)) << fr.x << " " << fr.y << " " << fr.z << " " << fr.n;
  }
}

TEST(EnumerateTriples, BruteForceCounts) {
  const auto one = enumerate_triples(1, 1, 1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(as_string(one.front()), "2/1");

  const auto small = enumerate_triples(2, 2, 2, 3);
  std::set<std::string> got;
  for (const auto& fr : small) {
    got.insert(as_string(fr));
  }
  EXPECT_EQ(got, (std::set<std::string>{"1/4", "9/8", "2/1", "9/1", "16/1"}));

  EXPECT_EQ(enumerate_triples(3, 3, 3, 4).size(), 31u);
  const auto big = enumerate_triples(5, 4, 6, 5);
  EXPECT_EQ(big.size(), 217u);
  for (const auto& fr : big) {
    EXPECT_TRUE(exact_condition(fr));
  }
  EXPECT_THROW((void)enumerate_triples(0, 1, 1, 3), DomainError);
  EXPECT_THROW((void)enumerate_triples(1, 1, 1, 2), DomainError);
}

TEST(InverseLogFit, RecoversModel) {
  const double x = 2.0;
  std::vector<std::pair<double, double>> trace;
  for (double s : {5e3, 5e4, 5e5}) {
    trace.emplace_back(s, 2.0 * (1.0 + 0.7 / std::log(x * s)));
  }
  const InverseLogFit fit = fit_inverse_log(trace, x);
  EXPECT_NEAR(fit.a, 2.0, 1e-12);
  EXPECT_NEAR(fit.b, 1.4, 1e-10);
}

TEST(ZetaScan, RejectsBadSchedules) {
  const FermatRational fr = fermat_value(1, 1, 1, 3);
  EXPECT_THROW((void)zeta_scan(fr, {}), DomainError);
  EXPECT_THROW((void)zeta_scan(fr, {5e4, 5e3}), DomainError);
  EXPECT_THROW((void)zeta_scan(fr, {5e4, 5e4}), DomainError);
  EXPECT_THROW((void)zeta_scan(fr, {1e3, 5e4}), DomainError);
  EXPECT_THROW((void)zeta_scan(fr, {5e4, 1e7}), DomainError);
}

TEST(ZetaScan, LinearInX) {
  const double s = 1e5;
  FunctionalInput in;
  in.s = s;
  const ScanParams p = quick_params();
  in.M = scan_point(p);
  in.x = 1.0;
  const double v1 = functional_parts(in, p.cfg, direct_excess_source(), p.mode).value;
  in.x = 2.0;
  const double v2 = functional_parts(in, p.cfg, direct_excess_source(), p.mode).value;
  EXPECT_NEAR((v2 / v1) / 2.0, 1.0, 0.35);
}

TEST(ZetaScan, DeterministicAndHonest) {
  const FermatRational fr = fermat_value(1, 1, 1, 3);
  const std::vector<double> schedule{1e4, 2e4};
  const ScanVerdict a = zeta_scan(fr, schedule, quick_params());
  const ScanVerdict b = zeta_scan(fr, schedule, quick_params());
  ASSERT_EQ(a.functional_trace.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.functional_trace[i].first, b.functional_trace[i].first);
    EXPECT_EQ(a.functional_trace[i].second, b.functional_trace[i].second);
    EXPECT_TRUE(std::isfinite(a.functional_trace[i].second));
    EXPECT_GT(a.functional_trace[i].second, 0.0);
  }
  EXPECT_EQ(a.extrapolated, b.extrapolated);
  EXPECT_FALSE(a.exact_equals_one);
  EXPECT_NE(a.note.find("integer arithmetic"), std::string::npos);
}
