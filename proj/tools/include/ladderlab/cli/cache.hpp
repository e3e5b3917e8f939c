#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "ladderlab/excess_lab.hpp"
#include "ladderlab/quadrature.hpp"

namespace ladderlab::cli {

using nlohmann::json;

[[nodiscard]] std::string code_version();

[[nodiscard]] std::string sha256_hex(const std::string& bytes);

[[nodiscard]] json cfg_to_json(const QuadratureConfig& cfg);

// Content hash of (operation, parameters, cfg, code version).
[[nodiscard]] std::string cache_key(const std::string& operation, const json& params, const QuadratureConfig& cfg);

// Append-only JSON-lines store. Writers serialize on an advisory lock;
// readers skip lines they cannot parse (a write in progress).
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
  [[nodiscard]] std::filesystem::path store_path() const;

  [[nodiscard]] std::optional<json> lookup(const std::string& key) const;

  // First write wins; later writes of an existing key are ignored.
  void store(const std::string& key, const std::string& operation, const json& value) const;

 private:
  std::filesystem::path dir_;
};

// Runs compute() unless a value for the key is already stored.
template <class F>
json cached(const ResultCache* cache, const std::string& operation, const json& params,
            const QuadratureConfig& cfg, F&& compute) {
  if (cache == nullptr) {
    return compute();
  }
  const std::string key = cache_key(operation, params, cfg);
  if (auto hit = cache->lookup(key)) {
    return *std::move(hit);
  }
  json value = compute();
  cache->store(key, operation, value);
  return value;
}

[[nodiscard]] json to_json(const ExcessReport& r);
[[nodiscard]] ExcessReport excess_report_from_json(const json& j);

// ExcessSource that consults the cache before integrating.
[[nodiscard]] ExcessSource cached_excess_source(const ResultCache* cache);

[[nodiscard]] std::filesystem::path default_cache_dir();

}  // namespace ladderlab::cli
