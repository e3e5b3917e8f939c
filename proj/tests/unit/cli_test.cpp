#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ladderlab/cli/cache.hpp"
#include "ladderlab/cli/dispatch.hpp"
#include "ladderlab/cli/report.hpp"
#include "ladderlab/errors.hpp"

using namespace ladderlab;
using namespace ladderlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ladderlab-cli-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    n += c == '\n';
  }
  return n;
}

}  // namespace

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CacheKey, DependsOnEverything) {
  const json p{{"T", 1e6}};
  QuadratureConfig cfg;
  const std::string base = cache_key("excess", p, cfg);
  EXPECT_EQ(base, cache_key("excess", json{{"T", 1e6}}, cfg));
  EXPECT_NE(base, cache_key("product", p, cfg));
  EXPECT_NE(base, cache_key("excess", json{{"T", 1e5}}, cfg));
  cfg.abs_tol = 1e-7;
  EXPECT_NE(base, cache_key("excess", p, cfg));
}

TEST(ResultCache, FirstWriteWins) {
  const ResultCache cache(scratch_dir("store"));
  EXPECT_FALSE(cache.lookup("k1").has_value());
  cache.store("k1", "op", json{{"a", 1}});
  cache.store("k1", "op", json{{"a", 2}});
  ASSERT_TRUE(cache.lookup("k1").has_value());
  EXPECT_EQ((*cache.lookup("k1"))["a"], 1);
  {
    std::ofstream torn(cache.store_path(), std::ios::app);
    torn << "{\"key\":\"k2\",\"val";
  }
  EXPECT_FALSE(cache.lookup("k2").has_value());
  EXPECT_TRUE(cache.lookup("k1").has_value());
}

TEST(Report, CsvQuotesAndLawRow) {
  ReportBuilder b("demo", json::object());
  b.columns({{"a", "input"}, {"b", "x, y"}});
  b.row({1.5, "say \"hi\""});
  const std::string csv = render_csv(b.build());
  EXPECT_EQ(csv, "a,b\r\ninput,\"x, y\"\r\n1.5,\"say \"\"hi\"\"\"\r\n");
  EXPECT_THROW(b.row({1.0}), std::logic_error);
}

TEST(Report, PlotNeedsTwoRows) {
  ReportBuilder b("demo", json::object());
  b.columns({{"x", "input"}, {"y", "law"}});
  b.plot("x", {"y"});
  b.row({1.0, 2.0});
  EXPECT_THROW((void)emit_plot_script(b.build()), DomainError);
  b.row({2.0, 3.0});
  const std::string script = emit_plot_script(b.build());
  EXPECT_NE(script.find("$data << EOD"), std::string::npos);
  EXPECT_NE(script.find("title 'y'"), std::string::npos);
}

TEST(Dispatch, UnknownFlagIsValidationError) {
  const auto r = dispatch({"zeta", "--t", "100", "--bogus", "1"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(dispatch({"nonsense"}).exit_code, 2);
  EXPECT_EQ(dispatch({}).exit_code, 2);
}

TEST(Dispatch, RangeErrorsExitTwo) {
  const fs::path dir = scratch_dir("range");
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"fermat", "--x", "3", "--y", "4", "--z", "5", "--n", "2", "--schedule", "1e4"},
           {"excess", "--T", "50"},
           {"excess", "--T", "1e5", "--v", "2"},
           {"product", "--T", "1e5", "--k", "5"},
           {"geometry", "--theta", "0", "--f5f6-factor", "3"},
           {"zeta", "--t", "100", "--points-per-oscillation", "2"}}) {
    std::vector<std::string> a = args;
    a.insert(a.end(), {"--cache-dir", dir.string()});
    const auto r = dispatch(a);
    EXPECT_EQ(r.exit_code, 2) << args.front();
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Dispatch, NumericFailureExitsThree) {
  const auto r = dispatch({"gram", "--T", "1e4", "--U", "0.01", "--no-cache"});
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_TRUE(r.out.empty());
}

TEST(Dispatch, ZetaCsv) {
  const auto r = dispatch({"zeta", "--t", "100,1000", "--no-cache"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,z,theta,theta1,theta_gap_48t,terms\r\n", 0), 0u);
  EXPECT_EQ(count_lines(r.out), 4u);
}

TEST(Dispatch, ColdAndCachedReportsIdentical) {
  const fs::path dir = scratch_dir("cold");
  const std::vector<std::string> args{"excess", "--T", "1e4", "--v", "0.5,1.5708", "--cache-dir", dir.string()};
  const auto cold = dispatch(args);
  ASSERT_EQ(cold.exit_code, 0) << cold.err;
  ASSERT_TRUE(fs::exists(dir / "results.jsonl"));
  const auto warm = dispatch(args);
  ASSERT_EQ(warm.exit_code, 0) << warm.err;
  EXPECT_EQ(cold.out, warm.out);

  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto uncached = dispatch([&] {
    auto a = json_args;
    a.push_back("--no-cache");
    return a;
  }());
  EXPECT_EQ(dispatch(json_args).out, uncached.out);
}

TEST(Dispatch, ExcessSweepPlotHasTwoSeries) {
  const fs::path dir = scratch_dir("plot");
  const fs::path script = dir / "excess.gp";
  const auto r = dispatch({"excess", "--T", "1e4", "--v", "0.5,1.0,1.5", "--cache-dir", dir.string(), "--plot",
                           script.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::ifstream in(script);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("title 'lhs'"), std::string::npos);
  EXPECT_NE(text.find("title 'main_term'"), std::string::npos);

  const fs::path single = dir / "single.gp";
  const auto one = dispatch({"excess", "--T", "1e4", "--cache-dir", dir.string(), "--plot", single.string()});
  EXPECT_EQ(one.exit_code, 2);
  EXPECT_TRUE(one.out.empty());
  EXPECT_FALSE(fs::exists(single));
}

TEST(Dispatch, ConfigFileSuppliesDefaults) {
  const fs::path dir = scratch_dir("config");
  const fs::path cfg = dir / "run.conf";
  {
    std::ofstream out(cfg);
    out << "# defaults\nt = 100,1000\nformat=json\n";
  }
  const auto r = dispatch({"zeta", "--config", cfg.string(), "--no-cache"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '{');
  const json j = json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 2u);

  const auto over = dispatch({"zeta", "--config", cfg.string(), "--t", "500", "--format", "csv", "--no-cache"});
  ASSERT_EQ(over.exit_code, 0) << over.err;
  EXPECT_EQ(count_lines(over.out), 3u);

  {
    std::ofstream out(cfg);
    out << "no equals sign here\n";
  }
  EXPECT_EQ(dispatch({"zeta", "--config", cfg.string(), "--t", "100"}).exit_code, 2);
}

TEST(Dispatch, GeometrySeededSampling) {
  const std::vector<std::string> args{"geometry", "--random", "50", "--seed", "7", "--foci", "F3F4", "--no-cache"};
  const auto a = dispatch(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, dispatch(args).out);
  EXPECT_EQ(count_lines(a.out), 52u);
}

TEST(Dispatch, GramReportsBothParities) {
  const auto r = dispatch({"gram", "--T", "1e4", "--U", "100", "--format", "json", "--no-cache"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0][0], "even");
  EXPECT_EQ(j["rows"][1][0], "odd");
}
