#include "zetauniv/tau_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetauniv/errors.hpp"
#include "zetauniv/euler_product.hpp"
#include "zetauniv/phase.hpp"
#include "tau_search_detail.hpp"

namespace zetauniv {

SearchWindow SearchWindow::with_length(std::int64_t T, double H) {
  if (T <= 0) throw ConfigError("window: T must be a positive integer");
  if (!(H > 0.0) || !std::isfinite(H))
    throw ConfigError("window: H must be > 0");
  if (H > static_cast<double>(T))
    throw ConfigError("window: H = " + std::to_string(H) + " exceeds T = " +
                      std::to_string(T));
  return {T, H, std::nullopt};
}

SearchWindow SearchWindow::from_exponent(std::int64_t T, double B) {
  if (T <= 2) throw ConfigError("window: T must exceed e for H = (log T)^B");
  SearchWindow w = with_length(T, std::pow(std::log(static_cast<double>(T)), B));
  w.B = B;
  return w;
}

HitSet HitSet::from_intervals(std::vector<Interval> intervals) {
  HitSet h;
  h.intervals = std::move(intervals);
  for (const Interval& iv : h.intervals) h.measure += iv.length();
  return h;
}

bool HitSet::contains(double offset) const {
  auto it = std::upper_bound(
      intervals.begin(), intervals.end(), offset,
      [](double v, const Interval& iv) { return v < iv.start; });
  if (it == intervals.begin()) return false;
  --it;
  return offset <= it->end;
}

std::vector<Interval> intersect(std::span<const Interval> a,
                                std::span<const Interval> b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double lo = std::max(a[i].start, b[j].start);
    double hi = std::min(a[i].end, b[j].end);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].end < b[j].end)
      ++i;
    else
      ++j;
  }
  return out;
}

std::vector<Interval> unite(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.start < y.start; });
  std::vector<Interval> out;
  for (const Interval& iv : intervals) {
    if (!out.empty() && iv.start <= out.back().end)
      out.back().end = std::max(out.back().end, iv.end);
    else
      out.push_back(iv);
  }
  return out;
}

bool c_delta_contains(TallShift tau, const AngleAssignment& assignment,
                      double delta) {
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    double phase = phase_fraction(tau, frequency_dd(assignment.primes[i]));
    if (!(circle_distance(assignment.theta[i] - phase) < 0.5 * delta))
      return false;
  }
  return true;
}

namespace detail {

std::vector<Interval> scan_with_cache(const PhaseCache& cache,
                                      std::span<const double> theta,
                                      double delta, double from, double to) {
  std::vector<Interval> result{{from, to}};
  if (!(to > from)) return {};
  std::vector<Interval> family;
  for (std::size_t i = 0; i < cache.size() && !result.empty(); ++i) {
    const double alpha = cache.frequency(i);
    double c = theta[i] - cache.base_phase(i);
    c -= std::floor(c);
    family.clear();
    const double k_lo = std::floor(from * alpha - c - 0.5 * delta);
    const double k_hi = std::ceil(to * alpha - c + 0.5 * delta);
    for (double k = k_lo; k <= k_hi; k += 1.0) {
      double a = std::max(from, (c + k - 0.5 * delta) / alpha);
      double b = std::min(to, (c + k + 0.5 * delta) / alpha);
      if (b > a) family.push_back({a, b});
    }
    result = intersect(result, family);
  }
  return result;
}

void check_scan_inputs(const AngleAssignment& assignment, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
  if (assignment.size() > kMaxScanPrimes)
    throw CapacityError("scan_c_delta: |M| = " +
                        std::to_string(assignment.size()) +
                        " exceeds 12; use the sampling estimator "
                        "(equidistribution_check) instead");
}

}  // namespace detail

HitSet scan_c_delta_range(const SearchWindow& window,
                          const AngleAssignment& assignment, double delta,
                          double from, double to) {
  detail::check_scan_inputs(assignment, delta);
  from = std::max(from, 0.0);
  to = std::min(to, window.H);
  PhaseCache cache(window.T, assignment.primes);
  return HitSet::from_intervals(
      detail::scan_with_cache(cache, assignment.theta, delta, from, to));
}

HitSet scan_c_delta(const SearchWindow& window,
                    const AngleAssignment& assignment, double delta) {
  return scan_c_delta_range(window, assignment, delta, 0.0, window.H);
}

EquidistributionResult equidistribution_check(
    std::span<const double> alphas,
    std::span<const std::pair<double, double>> box, const SearchWindow& window,
    std::size_t n_samples) {
  if (alphas.size() != box.size())
    throw ConfigError("equidistribution_check: box dimension mismatch");
  if (n_samples == 0) throw ConfigError("equidistribution_check: no samples");
  double volume = 1.0;
  for (const auto& [a, b] : box) {
    if (!(0.0 <= a && a < b && b <= 1.0))
      throw ConfigError("equidistribution_check: box sides must satisfy "
                        "0 <= a < b <= 1");
    volume *= b - a;
  }
  std::size_t inside = 0;
  const double step = window.H / static_cast<double>(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    TallShift tau{window.T, (static_cast<double>(k) + 0.5) * step};
    bool in = true;
    for (std::size_t j = 0; j < alphas.size() && in; ++j) {
      double x = phase_fraction(tau, dd::DDouble(alphas[j]));
      in = x >= box[j].first && x <= box[j].second;
    }
    inside += in;
  }
  return {static_cast<double>(inside) / static_cast<double>(n_samples), volume};
}

}  // namespace zetauniv
