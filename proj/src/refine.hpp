#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "zetauniv/tau_search.hpp"

namespace zetauniv::detail {

struct Run {
  Interval interval;
  double witness;  // a sample inside the run that tested good
};

// Maximal runs of [a, b] on which good(u) holds. Samples are spaced at most
// step apart (plus the extra points); each good/bad transition is bisected
// until the bracket is below step / 16. A run resting on a single sample is
// bisected further until its edge moves, so narrow hits around a seed get
// positive width.
template <class Good>
std::vector<Run> good_runs(double a, double b, double step,
                           std::span<const double> extra, Good&& good) {
  std::vector<double> u;
  const auto n = static_cast<long>(std::max(1.0, std::ceil((b - a) / step)));
  for (long k = 0; k <= n; ++k)
    u.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(n));
  for (double e : extra)
    if (e >= a && e <= b) u.push_back(e);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());

  std::vector<char> ok(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) ok[k] = good(u[k]) ? 1 : 0;

  const double tol = step / 16.0;
  auto edge = [&](double bad, double inside, bool isolated) {
    const double start = inside;
    for (int it = 0; it < 200; ++it) {
      bool narrow = std::abs(inside - bad) <= tol;
      if (narrow && !(isolated && inside == start && it < 64)) break;
      double mid = 0.5 * (bad + inside);
      if (mid == bad || mid == inside) break;
      if (good(mid))
        inside = mid;
      else
        bad = mid;
    }
    return inside;
  };

  std::vector<Run> runs;
  for (std::size_t i = 0; i < u.size();) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < u.size() && ok[j + 1]) ++j;
    const bool isolated = i == j;
    double lo = i == 0 ? u[0] : edge(u[i - 1], u[i], isolated);
    double hi = j + 1 == u.size() ? u[j] : edge(u[j + 1], u[j], isolated);
    if (hi > lo) runs.push_back({{lo, hi}, u[(i + j) / 2]});
    i = j + 1;
  }
  return runs;
}

}  // namespace zetauniv::detail
