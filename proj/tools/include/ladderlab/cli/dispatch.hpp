#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ladderlab/cli/cache.hpp"
#include "ladderlab/excess_lab.hpp"
#include "ladderlab/quadrature.hpp"

namespace ladderlab::cli {

enum class ExitCode : int { ok = 0, validation = 2, numeric = 3 };

inline constexpr const char* command_names[] = {"zeta",      "gram",   "ladder",  "excess",
                                                "product",   "factorize", "fermat", "geometry"};

struct RunConfig {
  std::string command;
  json params = json::object();  // per-command numeric parameters
  UMode u_mode = UMode::capped;
  QuadratureConfig cfg;
  std::uint64_t seed = 20240917;
  std::filesystem::path cache_dir;
  bool use_cache = true;
  std::string output_format = "csv";
  std::optional<std::filesystem::path> plot_path;
  std::optional<std::filesystem::path> output_path;
};

// Throws DomainError on any out-of-range parameter.
void validate(const RunConfig& rc);

// Runs the command and returns its report (see report.hpp).
[[nodiscard]] json execute(const RunConfig& rc, const ResultCache* cache);

struct DispatchResult {
  int exit_code = 0;
  std::string out;  // report text, empty unless the run succeeded
  std::string err;
};

// argv without the program name. Nothing is written anywhere unless the
// whole run succeeds.
[[nodiscard]] DispatchResult dispatch(const std::vector<std::string>& args);

// key=value lines; '#' starts a comment.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

}  // namespace ladderlab::cli
