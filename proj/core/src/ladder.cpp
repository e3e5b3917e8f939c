#include "ladderlab/ladder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <system_error>

#include <unistd.h>

#include <boost/math/tools/roots.hpp>

#include "ladderlab/constants.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/zeta_core.hpp"

namespace ladderlab {

namespace fs = std::filesystem;

namespace {

constexpr double cell_width = 1.0;
constexpr std::size_t chunk_cells = 32768;
constexpr int cell_gauss_order = 14;
constexpr double phi_floor = 100.0;

// Bump when anything feeding the stored cell integrals changes.
constexpr std::uint32_t table_format = 1;
constexpr char table_magic[8] = {'L', 'L', 'H', 'J', 'T', 'B', 'L', '\0'};

struct ChunkHeader {
  char magic[8];
  std::uint32_t format;
  std::uint32_t gauss_order;
  std::uint64_t index;
  std::uint64_t cells;
  double width;
};

fs::path default_cache_dir() {
  if (const char* env = std::getenv("LADDERLAB_CACHE"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return fs::path(xdg) / "ladderlab";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return fs::path(home) / ".cache" / "ladderlab";
  }
  return {};
}

class HardyTable {
 public:
  static HardyTable& instance() {
    static HardyTable table;
    return table;
  }

  void set_dir(const fs::path& dir) {
    std::unique_lock lock(mu_);
    dir_ = dir;
  }

  fs::path dir() {
    std::shared_lock lock(mu_);
    return dir_;
  }

  double extent() {
    std::shared_lock lock(mu_);
    return static_cast<double>(prefix_.size() - 1) * cell_width;
  }

  double value(double t) {
    const auto cell = static_cast<std::size_t>(t / cell_width);
    ensure_cells(cell + 1);
    double base = 0.0;
    {
      std::shared_lock lock(mu_);
      base = prefix_[cell];
    }
    const double a = static_cast<double>(cell) * cell_width;
    return base + hardy_cell_integral(a, t);
  }

  double inverse(double target) {
    std::size_t cell = 0;
    for (;;) {
      {
        std::shared_lock lock(mu_);
        if (prefix_.back() > target) {
          const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
          cell = static_cast<std::size_t>(it - prefix_.begin()) - 1;
          break;
        }
      }
      const double covered = extent();
      if (covered + chunk_cells * cell_width > max_height) {
        throw NumericError(NumericError::Kind::accuracy_unattainable,
                           "Hardy-Littlewood integral inverse beyond the supported height");
      }
      ensure_cells(static_cast<std::size_t>(covered / cell_width) + 1);
    }
    double base = 0.0;
    {
      std::shared_lock lock(mu_);
      base = prefix_[cell];
    }
    const double a = static_cast<double>(cell) * cell_width;
    const double b = a + cell_width;
    if (base == target) {
      return a;
    }
    auto f = [&](double y) { return base + hardy_cell_integral(a, y) - target; };
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        f, a, b, base - target, value(b) - target, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (root.first + root.second);
  }

 private:
  HardyTable() : dir_(default_cache_dir()) { prefix_.push_back(0.0); }

  // Makes prefix_ hold J at cell boundaries 0..cells.
  void ensure_cells(std::size_t cells) {
    {
      std::shared_lock lock(mu_);
      if (prefix_.size() > cells) {
        return;
      }
    }
    std::unique_lock lock(mu_);
    while (prefix_.size() <= cells) {
      const std::size_t index = (prefix_.size() - 1) / chunk_cells;
      const double top = static_cast<double>((index + 1) * chunk_cells) * cell_width;
      if (top > max_height + chunk_cells * cell_width) {
        throw NumericError(NumericError::Kind::accuracy_unattainable,
                           "Hardy-Littlewood table requested beyond the supported height");
      }
      std::vector<double> cells_j = load_chunk(index);
      if (cells_j.empty()) {
        cells_j = compute_chunk(index);
        store_chunk(index, cells_j);
      }
      for (double c : cells_j) {
        running_.add(c);
        prefix_.push_back(running_.value());
      }
    }
  }

  static std::vector<double> compute_chunk(std::size_t index) {
    std::vector<double> cells(chunk_cells);
    const std::size_t first = index * chunk_cells;
    for (std::size_t i = 0; i < chunk_cells; ++i) {
      const double a = static_cast<double>(first + i) * cell_width;
      cells[i] = hardy_cell_integral(a, a + cell_width);
    }
    return cells;
  }

  fs::path chunk_path(std::size_t index) const {
    return dir_ / ("hardy-j-f" + std::to_string(table_format) + "-" + std::to_string(index) + ".bin");
  }

  std::vector<double> load_chunk(std::size_t index) const {
    if (dir_.empty()) {
      return {};
    }
    std::ifstream in(chunk_path(index), std::ios::binary);
    if (!in) {
      return {};
    }
    ChunkHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, table_magic, sizeof table_magic) != 0 || h.format != table_format ||
        h.gauss_order != cell_gauss_order || h.index != index || h.cells != chunk_cells ||
        h.width != cell_width) {
      return {};
    }
    std::vector<double> cells(chunk_cells);
    in.read(reinterpret_cast<char*>(cells.data()), static_cast<std::streamsize>(cells.size() * sizeof(double)));
    if (!in || std::any_of(cells.begin(), cells.end(), [](double c) { return !(c >= 0.0); })) {
      return {};
    }
    return cells;
  }

  void store_chunk(std::size_t index, const std::vector<double>& cells) const {
    if (dir_.empty()) {
      return;
    }
    std::error_code ec;
    fs::create_directories(dir_, ec);
    const fs::path final_path = chunk_path(index);
    fs::path tmp = final_path;
    tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(std::random_device{}());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        return;
      }
      ChunkHeader h{};
      std::memcpy(h.magic, table_magic, sizeof table_magic);
      h.format = table_format;
      h.gauss_order = cell_gauss_order;
      h.index = index;
      h.cells = cells.size();
      h.width = cell_width;
      out.write(reinterpret_cast<const char*>(&h), sizeof h);
      out.write(reinterpret_cast<const char*>(cells.data()), static_cast<std::streamsize>(cells.size() * sizeof(double)));
      if (!out) {
        out.close();
        fs::remove(tmp, ec);
        return;
      }
    }
    fs::rename(tmp, final_path, ec);
    if (ec) {
      fs::remove(tmp, ec);
    }
  }

  std::shared_mutex mu_;
  fs::path dir_;
  std::vector<double> prefix_;
  CompensatedSum running_;
};

// Newton from the right on a convex increasing function converges
// monotonically; g'' = 1/y for both F and hl_smooth.
template <class G, class D>
double invert_convex(G&& g, D&& dg, double value, double lowest, const char* what) {
  double y = std::max(value, 20.0);
  for (int iter = 0; iter < 100; ++iter) {
    const double step = (g(y) - value) / dg(y);
    const double next = std::max(y - step, lowest);
    if (std::abs(next - y) <= 1e-15 * y) {
      return next;
    }
    y = next;
  }
  throw NumericError(NumericError::Kind::no_convergence, std::string(what) + ": Newton did not converge");
}

double hl_smooth_inverse(double value) {
  const double lowest = two_pi * std::exp(-2.0 * euler_c);
  return invert_convex([](double y) { return hl_smooth(y); },
                       [](double y) { return hl_smooth_derivative(y); }, value, lowest, "hl_smooth inverse");
}

double ladder_J(double t, LadderModel model) {
  return model == LadderModel::exact ? hardy_integral(t) : hl_smooth(t);
}

double ladder_J_inverse(double value, LadderModel model) {
  return model == LadderModel::exact ? hardy_integral_inverse(value) : hl_smooth_inverse(value);
}

void check_height(double t, const char* what) {
  if (!(t > phi_floor) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + " requires a height above 100, got " + std::to_string(t));
  }
  if (t > max_height) {
    throw DomainError(std::string(what) + " requires a height at most 1e7");
  }
}

}  // namespace

double hardy_cell_integral(double a, double b) {
  if (!(b > a)) {
    return 0.0;
  }
  const GaussRule rule = gauss_legendre(cell_gauss_order);
  const double osc = z2_oscillation_length(b);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / osc)));
  const double w = (b - a) / panels;
  auto f = [](double t) {
    const double zt = z_value(t);
    return zt * zt;
  };
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    sum += detail::gauss_panel(f, rule, lo, p + 1 == panels ? b : lo + w).sum;
  }
  return sum;
}

double hardy_integral(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("hardy_integral requires t >= 0");
  }
  return HardyTable::instance().value(t);
}

double hardy_integral_inverse(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError("hardy_integral_inverse requires a non-negative value");
  }
  return HardyTable::instance().inverse(value);
}

void set_hardy_cache_dir(const fs::path& dir) { HardyTable::instance().set_dir(dir); }

fs::path hardy_cache_dir() { return HardyTable::instance().dir(); }

double hardy_table_extent() { return HardyTable::instance().extent(); }

double ladder_F(double y) {
  if (!(y > 0.0)) {
    throw DomainError("ladder_F requires y > 0");
  }
  return y * std::log(y) + (euler_c - std::log(two_pi)) * y;
}

double ladder_F_inverse(double value) {
  const double lowest = two_pi * std::exp(-1.0 - euler_c);
  if (!(value >= ladder_F(lowest)) || !std::isfinite(value)) {
    throw DomainError("ladder_F_inverse: value below the minimum of F");
  }
  return invert_convex([](double y) { return ladder_F(y); },
                       [](double y) { return std::log(y) + 1.0 + euler_c - std::log(two_pi); }, value,
                       lowest, "ladder_F inverse");
}

double phi1(double t, LadderModel model) {
  check_height(t, "phi1");
  return ladder_F_inverse(ladder_J(t, model));
}

double phi1_iter(double t, int r, LadderModel model) {
  if (r < 0) {
    throw DomainError("phi1_iter requires r >= 0");
  }
  double y = t;
  for (int i = 0; i < r; ++i) {
    y = phi1(y, model);
  }
  return y;
}

double reverse_iterate(double T, int r, LadderModel model) {
  if (r < 1) {
    throw DomainError("reverse_iterate requires r >= 1");
  }
  return reverse_orbit(T, r, model).iterates.back();
}

ReverseOrbit reverse_orbit(double T, int k, LadderModel model) {
  check_height(T, "reverse_orbit");
  if (k < 1) {
    throw DomainError("reverse_orbit requires k >= 1");
  }
  ReverseOrbit orbit;
  orbit.base = T;
  orbit.k = k;
  orbit.iterates.reserve(static_cast<std::size_t>(k) + 1);
  orbit.iterates.push_back(T);
  for (int r = 1; r <= k; ++r) {
    orbit.iterates.push_back(ladder_J_inverse(ladder_F(orbit.iterates.back()), model));
  }
  return orbit;
}

double increment_integral(double T, int r, const QuadratureConfig& cfg, LadderModel model) {
  const ReverseOrbit orbit = reverse_orbit(T, r, model);
  const auto n = orbit.iterates.size();
  return integrate_z2(Interval::make(orbit.iterates[n - 2], orbit.iterates[n - 1]), cfg);
}

StructureReport interval_structure(double T, double l1, double l2, double l3, LadderModel model) {
  if (!(T >= 1e4)) {
    throw DomainError("interval_structure requires T >= 1e4");
  }
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(l3 > 0.0)) {
    throw DomainError("interval_structure requires positive l1, l2, l3");
  }
  StructureReport rep;
  rep.T = T;
  const ReverseOrbit orbit = reverse_orbit(T, 4, model);
  const double unit = (1.0 - euler_c) * T / std::log(T);
  for (int r = 1; r <= 4; ++r) {
    rep.gaps.push_back(orbit.iterates[r] - orbit.iterates[r - 1]);
    rep.predicted_gaps.push_back(unit);
  }
  const double t3_one = reverse_iterate(T + 2.0 * l3, 1, model);
  const double t2_three = reverse_iterate(T + 2.0 * l2, 3, model);
  const double t1_four = reverse_iterate(T + 2.0 * l1, 4, model);
  rep.gap_three_one = orbit.iterates[3] - t3_one;
  rep.predicted_three_one = 2.0 * unit;
  rep.gap_four_three = orbit.iterates[4] - t2_three;
  rep.predicted_four_three = unit;
  rep.orderings = {orbit.iterates[3] > t3_one, orbit.iterates[4] > t2_three, t1_four > orbit.iterates[4]};
  return rep;
}

}  // namespace ladderlab
