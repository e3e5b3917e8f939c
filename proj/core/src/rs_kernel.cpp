// Built with -ffast-math so the loop below vectorizes through libmvec.
// Nothing else belongs in this file.

#include <cmath>
#include <vector>

#include "ladderlab/zeta_core.hpp"

namespace ladderlab::detail {

namespace {

struct MainSumTables {
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
};

const MainSumTables& tables() {
  static const MainSumTables t = [] {
    const int count = static_cast<int>(std::sqrt(max_height / (2.0 * 3.141592653589793))) + 16;
    MainSumTables m;
    m.log_n.resize(count);
    m.inv_sqrt_n.resize(count);
    for (int n = 1; n <= count; ++n) {
      m.log_n[n - 1] = static_cast<double>(std::log(static_cast<long double>(n)));
      m.inv_sqrt_n[n - 1] = static_cast<double>(1.0L / std::sqrt(static_cast<long double>(n)));
    }
    return m;
  }();
  return t;
}

}  // namespace

double riemann_siegel_main_sum(double phase, double t, int count) {
  const MainSumTables& m = tables();
  const double* ln = m.log_n.data();
  const double* w = m.inv_sqrt_n.data();
  double acc = 0.0;
#pragma omp simd reduction(+ : acc)
  for (int i = 0; i < count; ++i) {
    acc += w[i] * std::cos(phase - t * ln[i]);
  }
  return acc;
}

}  // namespace ladderlab::detail
