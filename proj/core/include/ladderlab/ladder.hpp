#pragma once

#include <filesystem>
#include <vector>

#include "ladderlab/quadrature.hpp"

namespace ladderlab {

// How J(t) is realised when defining phi1 by F(phi1(t)) = J(t), with
// F(y) = y ln y + (c - ln 2pi) y.
//   exact:  J is the computed Hardy-Littlewood integral of Z^2 from 0.
//   smooth: J is replaced by hl_smooth(t).
enum class LadderModel { exact, smooth };

// --- Hardy-Littlewood integral table -------------------------------------

// J(t) = integral of Z^2 over [0, t]. Backed by a table of unit cells that
// grows on demand and is persisted under hardy_cache_dir().
[[nodiscard]] double hardy_integral(double t);

// The t >= 0 with hardy_integral(t) = value.
[[nodiscard]] double hardy_integral_inverse(double value);

// Integral of Z^2 over [a, b] with a fixed high-order rule, b - a <= a few
// units. This is what the table is built from.
[[nodiscard]] double hardy_cell_integral(double a, double b);

// Directory for table chunks. Defaults to $LADDERLAB_CACHE, else
// $XDG_CACHE_HOME/ladderlab, else ~/.cache/ladderlab. An empty path keeps
// the table in memory only.
void set_hardy_cache_dir(const std::filesystem::path& dir);
[[nodiscard]] std::filesystem::path hardy_cache_dir();

// Height currently covered by the in-memory table.
[[nodiscard]] double hardy_table_extent();

// --- Jacob's ladder ------------------------------------------------------

// F(y) = y ln y + (c - ln 2pi) y and its inverse on the increasing branch.
[[nodiscard]] double ladder_F(double y);
[[nodiscard]] double ladder_F_inverse(double value);

[[nodiscard]] double phi1(double t, LadderModel model = LadderModel::exact);

// phi1 applied r times; every intermediate value must stay above 100.
[[nodiscard]] double phi1_iter(double t, int r, LadderModel model = LadderModel::exact);

// [T]^r: the r-fold preimage of T under phi1.
[[nodiscard]] double reverse_iterate(double T, int r, LadderModel model = LadderModel::exact);

struct ReverseOrbit {
  double base = 0.0;
  std::vector<double> iterates;  // T^0 = T, T^1, ..., T^k
  int k = 0;
};

[[nodiscard]] ReverseOrbit reverse_orbit(double T, int k, LadderModel model = LadderModel::exact);

// Integral of Z^2 over [T^{r-1}, T^r], by direct quadrature.
[[nodiscard]] double increment_integral(double T, int r, const QuadratureConfig& cfg = {},
                                        LadderModel model = LadderModel::exact);

struct StructureReport {
  double T = 0.0;
  std::vector<double> gaps;            // T^r - T^{r-1}, r = 1..4
  std::vector<double> predicted_gaps;  // (1 - c) T / ln T
  // [T]^3 > [T+2 l3]^1, [T]^4 > [T+2 l2]^3, and the 4-fold interval
  // ([T]^4, [T+2 l1]^4) non-empty.
  std::vector<bool> orderings;
  double gap_three_one = 0.0;        // [T]^3 - [T+2 l3]^1
  double predicted_three_one = 0.0;  // 2 (1 - c) T / ln T
  double gap_four_three = 0.0;       // [T]^4 - [T+2 l2]^3
  double predicted_four_three = 0.0; // (1 - c) T / ln T
};

[[nodiscard]] StructureReport interval_structure(double T, double l1, double l2, double l3,
                                                 LadderModel model = LadderModel::exact);

}  // namespace ladderlab
