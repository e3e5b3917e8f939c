#include "ladderlab/cli/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace ladderlab::cli {

namespace fs = std::filesystem;

std::string code_version() { return std::string("ladderlab-") + LADDERLAB_VERSION + "+num1"; }

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

json cfg_to_json(const QuadratureConfig& cfg) {
  return json{{"points_per_oscillation", cfg.points_per_oscillation},
              {"abs_tol", cfg.abs_tol},
              {"rel_tol", cfg.rel_tol},
              {"max_subdivisions", cfg.max_subdivisions}};
}

std::string cache_key(const std::string& operation, const json& params, const QuadratureConfig& cfg) {
  // json objects keep keys sorted, so dump() is canonical.
  const json blob{{"op", operation}, {"params", params}, {"cfg", cfg_to_json(cfg)}, {"version", code_version()}};
  return sha256_hex(blob.dump());
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::store_path() const { return dir_ / "results.jsonl"; }

std::optional<json> ResultCache::lookup(const std::string& key) const {
  std::ifstream in(store_path());
  if (!in) {
    return std::nullopt;
  }
  std::string line;
  while (std::getline(in, line)) {
    // Cheap prefilter before parsing.
    if (line.find(key) == std::string::npos) {
      continue;
    }
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.contains("key") || entry["key"] != key) {
      continue;
    }
    return entry["value"];
  }
  return std::nullopt;
}

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class LockedFd {
 public:
  explicit LockedFd(const fs::path& path) : fd_(::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644)) {
    if (fd_ < 0) {
      throw std::runtime_error("cannot open cache store " + path.string());
    }
    ::flock(fd_, LOCK_EX);
  }
  ~LockedFd() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  LockedFd(const LockedFd&) = delete;
  LockedFd& operator=(const LockedFd&) = delete;
  [[nodiscard]] int fd() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

void ResultCache::store(const std::string& key, const std::string& operation, const json& value) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  LockedFd lock(store_path());
  if (lookup(key)) {
    return;
  }
  const json entry{{"key", key}, {"op", operation}, {"created_at", utc_now()}, {"value", value}};
  const std::string line = entry.dump() + "\n";
  std::size_t off = 0;
  while (off < line.size()) {
    const ssize_t n = ::write(lock.fd(), line.data() + off, line.size() - off);
    if (n < 0) {
      throw std::runtime_error("cache write failed");
    }
    off += static_cast<std::size_t>(n);
  }
}

json to_json(const ExcessReport& r) {
  return json{{"T", r.T},
              {"U_used", r.U_used},
              {"u_mode", r.u_mode == UMode::paper ? "paper" : "capped"},
              {"v", r.v},
              {"lhs", r.lhs},
              {"main_term", r.main_term},
              {"rel_dev", r.rel_dev},
              {"g3_integral", r.g3_integral},
              {"g4_integral", r.g4_integral},
              {"g3_pieces", r.g3_pieces},
              {"g4_pieces", r.g4_pieces}};
}

ExcessReport excess_report_from_json(const json& j) {
  ExcessReport r;
  r.T = j.at("T");
  r.U_used = j.at("U_used");
  r.u_mode = j.at("u_mode") == "paper" ? UMode::paper : UMode::capped;
  r.v = j.at("v");
  r.lhs = j.at("lhs");
  r.main_term = j.at("main_term");
  r.rel_dev = j.at("rel_dev");
  r.g3_integral = j.at("g3_integral");
  r.g4_integral = j.at("g4_integral");
  r.g3_pieces = j.at("g3_pieces");
  r.g4_pieces = j.at("g4_pieces");
  return r;
}

ExcessSource cached_excess_source(const ResultCache* cache) {
  return [cache](double T, double v, UMode mode, const QuadratureConfig& cfg) {
    const json params{{"T", T}, {"v", v}, {"u_mode", mode == UMode::paper ? "paper" : "capped"}};
    return excess_report_from_json(
        cached(cache, "excess_report", params, cfg, [&] { return to_json(excess(T, v, mode, cfg)); }));
  };
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("LADDERLAB_CACHE"); env != nullptr && *env != '\0') {
    return env;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return fs::path(xdg) / "ladderlab";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return fs::path(home) / ".cache" / "ladderlab";
  }
  return fs::current_path() / ".ladderlab-cache";
}

}  // namespace ladderlab::cli
