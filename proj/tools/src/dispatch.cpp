#include "ladderlab/cli/dispatch.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ladderlab/cli/report.hpp"
#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/ladder.hpp"

namespace ladderlab::cli {

namespace fs = std::filesystem;

std::vector<std::pair<std::string, std::string>> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot read config file " + path.string());
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    key.erase(0, key.find_first_not_of('-'));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    }
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

namespace {

struct Options {
  std::string config;
  std::string cache_dir;
  bool no_cache = false;
  std::string format = "auto";
  std::uint64_t seed = 20240917;
  QuadratureConfig cfg;
  std::string plot;
  std::string output;
  std::string u_mode;

  std::vector<double> t;
  double T = 1e6;
  double U = 1000.0;
  std::vector<double> v_list{half_pi};
  double v = half_pi;
  long k_single = 4;
  std::vector<int> k_list{1, 2, 3, 4};
  double l = 1.0;
  double l1 = 0.5, l2 = 0.5, l3 = 0.5;
  std::string model = "exact";
  bool increments = false;
  long n_intervals = default_gram_intervals;
  long x = 1, y = 1, z = 1, n = 3;
  std::vector<double> schedule;
  std::vector<double> theta_list;
  double theta = 0.0;
  std::string foci = "F1F2";
  std::string branch = "outer";
  double f5f6 = 0.5;
  long random = 0;
};

std::string arg_name(const std::string& token) {
  if (token.rfind("--", 0) != 0) {
    return {};
  }
  const auto eq = token.find('=');
  return token.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

// Splices config-file settings in after the subcommand, skipping any key
// also given on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) {
    return args;
  }
  std::vector<std::string> given;
  for (const auto& a : args) {
    given.push_back(arg_name(a));
  }
  const char* env_cache = std::getenv("LADDERLAB_CACHE");
  std::vector<std::string> extra;
  for (const auto& [key, value] : read_config_file(path)) {
    if (std::find(given.begin(), given.end(), key) != given.end()) {
      continue;
    }
    if (key == "cache-dir" && env_cache != nullptr && *env_cache != '\0') {
      continue;
    }
    extra.push_back("--" + key + "=" + value);
  }
  auto at = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return std::find(std::begin(command_names), std::end(command_names), a) != std::end(command_names);
  });
  std::vector<std::string> merged(args.begin(), at == args.end() ? args.end() : at + 1);
  merged.insert(merged.end(), extra.begin(), extra.end());
  if (at != args.end()) {
    merged.insert(merged.end(), at + 1, args.end());
  }
  return merged;
}

UMode parse_mode(const std::string& s) { return s == "paper" ? UMode::paper : UMode::capped; }

// "--v 1.5708" means pi/2.
double snap_half_pi(double v) { return v > half_pi && v <= half_pi + 1e-4 ? half_pi : v; }

json command_params(const std::string& cmd, const Options& o) {
  if (cmd == "zeta") {
    return json{{"t", o.t}};
  }
  if (cmd == "gram") {
    return json{{"T", o.T}, {"U", o.U}, {"v", o.v}};
  }
  if (cmd == "ladder") {
    return json{{"T", o.T},   {"k", o.k_single}, {"model", o.model}, {"increments", o.increments},
                {"l1", o.l1}, {"l2", o.l2},      {"l3", o.l3}};
  }
  if (cmd == "excess") {
    return json{{"T", o.T}, {"v", o.v_list}, {"n_intervals", o.n_intervals}, {"u_mode", o.u_mode}};
  }
  if (cmd == "product") {
    return json{{"T", o.T}, {"k", o.k_list}, {"l", o.l}, {"model", o.model}};
  }
  if (cmd == "factorize") {
    return json{{"T", o.T}, {"l3", o.l3}, {"v", o.v}, {"theta", o.theta}, {"u_mode", o.u_mode}};
  }
  if (cmd == "fermat") {
    return json{{"x", o.x},   {"y", o.y},         {"z", o.z},         {"n", o.n},
                {"v", o.v},   {"l3", o.l3},       {"theta", o.theta}, {"foci", o.foci},
                {"schedule", o.schedule}, {"u_mode", o.u_mode}};
  }
  return json{{"v", o.v},         {"l3", o.l3},           {"foci", o.foci},    {"branch", o.branch},
              {"theta", o.theta_list}, {"random", o.random}, {"f5f6_factor", o.f5f6}};
}

void build_app(CLI::App& app, Options& o) {
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  app.add_option("--config", o.config, "key=value file of default options");
  app.add_option("--cache-dir", o.cache_dir, "Result cache directory (default $LADDERLAB_CACHE)");
  app.add_flag("--no-cache", o.no_cache, "Compute everything, read and write no cache");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--seed", o.seed, "Seed for sampled inputs");
  app.add_option("--points-per-oscillation", o.cfg.points_per_oscillation, "Gauss-Legendre order per panel");
  app.add_option("--abs-tol", o.cfg.abs_tol, "Absolute quadrature tolerance");
  app.add_option("--rel-tol", o.cfg.rel_tol, "Relative quadrature tolerance");
  app.add_option("--max-subdivisions", o.cfg.max_subdivisions, "Bisection depth per panel");
  app.add_option("--plot", o.plot, "Also write a gnuplot script here");
  app.add_option("--output", o.output, "Write the report here instead of stdout");

  const auto modes = CLI::IsMember({"paper", "capped"});
  const auto models = CLI::IsMember({"exact", "smooth"});
  const auto labels = CLI::IsMember({"F1F2", "F3F4", "F5F6", "F7F8", "F9F10"});

  auto* zeta = app.add_subcommand("zeta", "Z(t), theta and theta1 at given heights")->fallthrough();
  zeta->add_option("--t", o.t, "Heights")->delimiter(',')->required();

  auto* gram = app.add_subcommand("gram", "g-point counts and measures of the disconnected sets")->fallthrough();
  gram->add_option("--T", o.T, "Window start");
  gram->add_option("--U", o.U, "Window length");
  gram->add_option("--v", o.v, "Half-width parameter in (0, pi/2]");

  auto* ladder = app.add_subcommand("ladder", "Reverse orbit of the ladder and its gaps")->fallthrough();
  ladder->add_option("--T", o.T, "Base height");
  ladder->add_option("--k", o.k_single, "Number of reverse iterates");
  ladder->add_option("--model", o.model, "exact or smooth")->check(models);
  ladder->add_flag("--increments", o.increments, "Integrate Z^2 over each orbit step");
  ladder->add_option("--l1", o.l1);
  ladder->add_option("--l2", o.l2);
  ladder->add_option("--l3", o.l3);

  auto* excess = app.add_subcommand("excess", "Difference of the Z^2 integrals over G3 and G4")->fallthrough();
  excess->add_option("--T", o.T, "Height");
  excess->add_option("--v", o.v_list, "Values of v")->delimiter(',');
  excess->add_option("--u-mode", o.u_mode, "paper or capped")->check(modes)->default_str("capped");
  excess->add_option("--n-intervals", o.n_intervals, "Gram intervals in the capped window");

  auto* product = app.add_subcommand("product", "Integrals of products of Z^2 along the ladder")->fallthrough();
  product->add_option("--T", o.T, "Height");
  product->add_option("--k", o.k_list, "Orders")->delimiter(',');
  product->add_option("--l", o.l, "Half-length of the interval");
  product->add_option("--model", o.model, "exact or smooth")->check(models);

  auto* factorize = app.add_subcommand("factorize", "Product form of the excess for M on Lbar")->fallthrough();
  factorize->add_option("--T", o.T, "Height");
  factorize->add_option("--l3", o.l3);
  factorize->add_option("--v", o.v);
  factorize->add_option("--theta", o.theta, "Polar angle of M");
  factorize->add_option("--u-mode", o.u_mode, "paper or capped")->check(modes)->default_str("paper");

  auto* fermat = app.add_subcommand("fermat", "Limit functional on a Fermat rational")->fallthrough();
  fermat->add_option("--x", o.x)->required();
  fermat->add_option("--y", o.y)->required();
  fermat->add_option("--z", o.z)->required();
  fermat->add_option("--n", o.n)->required();
  fermat->add_option("--schedule", o.schedule, "Increasing scales s")->delimiter(',')->required();
  fermat->add_option("--v", o.v);
  fermat->add_option("--l3", o.l3);
  fermat->add_option("--theta", o.theta, "Polar angle of M");
  fermat->add_option("--foci", o.foci)->check(labels);
  fermat->add_option("--u-mode", o.u_mode, "paper or capped")->check(modes)->default_str("paper");

  auto* geometry = app.add_subcommand("geometry", "Points on the lemniscates and Cassini ovals")->fallthrough();
  geometry->add_option("--v", o.v);
  geometry->add_option("--l3", o.l3);
  geometry->add_option("--foci", o.foci)->check(labels);
  geometry->add_option("--branch", o.branch)->check(CLI::IsMember({"outer", "inner"}));
  geometry->add_option("--theta", o.theta_list, "Polar angles")->delimiter(',');
  geometry->add_option("--random", o.random, "Additional seeded random angles");
  geometry->add_option("--f5f6-factor", o.f5f6, "0.5 or 2");
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw DomainError("cannot write " + path.string());
  }
}

}  // namespace

DispatchResult dispatch(const std::vector<std::string>& args) {
  DispatchResult res;
  Options o;
  CLI::App app("Numerical laboratory for Z(t) integrals over disconnected sets and Jacob's ladders", "ladderlab");
  build_app(app, o);

  std::string command;
  try {
    std::vector<std::string> merged = merge_config(args);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
    for (const char* name : command_names) {
      if (app.got_subcommand(name)) {
        command = name;
      }
    }
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.out = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = static_cast<int>(ExitCode::validation);
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  } catch (const Error& e) {
    res.exit_code = static_cast<int>(ExitCode::validation);
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }

  try {
    RunConfig rc;
    rc.command = command;
    if (o.u_mode.empty()) {
      o.u_mode = command == "excess" ? "capped" : "paper";
    }
    rc.u_mode = parse_mode(o.u_mode);
    o.v = snap_half_pi(o.v);
    for (double& v : o.v_list) {
      v = snap_half_pi(v);
    }
    rc.params = command_params(command, o);
    rc.cfg = o.cfg;
    rc.seed = o.seed;
    rc.cache_dir = o.cache_dir.empty() ? default_cache_dir() : fs::path(o.cache_dir);
    rc.use_cache = !o.no_cache;
    rc.output_format = o.format == "auto" ? (command == "fermat" || command == "factorize" ? "json" : "csv") : o.format;
    if (!o.plot.empty()) {
      rc.plot_path = o.plot;
    }
    if (!o.output.empty()) {
      rc.output_path = o.output;
    }
    validate(rc);

    set_hardy_cache_dir(rc.cache_dir);
    const ResultCache cache(rc.cache_dir);
    const json report = execute(rc, rc.use_cache ? &cache : nullptr);
    const std::string text = rc.output_format == "json" ? render_json(report) : render_csv(report);
    const std::string plot = rc.plot_path ? emit_plot_script(report) : std::string();
    if (rc.plot_path) {
      write_file(*rc.plot_path, plot);
    }
    if (rc.output_path) {
      write_file(*rc.output_path, text);
    } else {
      res.out = text;
    }
  } catch (const DomainError& e) {
    res.exit_code = static_cast<int>(ExitCode::validation);
    res.err = std::string("error: ") + e.what() + "\n";
  } catch (const NumericError& e) {
    res.exit_code = static_cast<int>(ExitCode::numeric);
    res.err = std::string("numeric failure: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = static_cast<int>(ExitCode::numeric);
    res.err = std::string("failure: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace ladderlab::cli
