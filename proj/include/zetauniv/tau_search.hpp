#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zetauniv/fit.hpp"
#include "zetauniv/types.hpp"

namespace zetauniv {

// The short interval [T, T + H]. When built from an exponent, H = (log T)^B.
struct SearchWindow {
  std::int64_t T = 0;
  double H = 0.0;
  std::optional<double> B;

  // Throws ConfigError unless 0 < H <= T.
  static SearchWindow with_length(std::int64_t T, double H);
  static SearchWindow from_exponent(std::int64_t T, double B);

  TallShift at(double offset) const { return {T, offset}; }
};

struct Interval {
  double start;
  double end;

  double length() const { return end - start; }
  bool operator==(const Interval&) const = default;
};

// Disjoint ascending offsets within [0, H].
struct HitSet {
  std::vector<Interval> intervals;
  double measure = 0.0;

  static HitSet from_intervals(std::vector<Interval> intervals);
  bool contains(double offset) const;
};

// Intersection and union of disjoint ascending interval lists.
std::vector<Interval> intersect(std::span<const Interval> a,
                                std::span<const Interval> b);
std::vector<Interval> unite(std::vector<Interval> intervals);

// ||theta_p - tau log p / 2pi|| < delta / 2 for every p in M.
bool c_delta_contains(TallShift tau, const AngleAssignment& assignment,
                      double delta);

inline constexpr std::size_t kMaxScanPrimes = 12;
inline constexpr std::size_t kMaxLatticePrimes = 8;

// Exact C(delta, M, T) as offsets in [0, H]: each condition is a periodic
// family of intervals (period 2pi/log p, length 2pi delta/log p); the
// families are intersected. Throws CapacityError when |M| > 12.
HitSet scan_c_delta(const SearchWindow& window,
                    const AngleAssignment& assignment, double delta);

// Same restricted to offsets in [from, to].
HitSet scan_c_delta_range(const SearchWindow& window,
                          const AngleAssignment& assignment, double delta,
                          double from, double to);

struct EquidistributionResult {
  double empirical;
  double volume;
};

// Fraction of n_samples equally spaced tau in the window with
// (tau alpha_1, ..., tau alpha_n) mod 1 inside the box.
EquidistributionResult equidistribution_check(
    std::span<const double> alphas,
    std::span<const std::pair<double, double>> box, const SearchWindow& window,
    std::size_t n_samples);

// Some tau in the window inside C(delta, M, T), found via a closest-vector
// search on the lattice generated by the frequency ratios. Every returned
// shift passed c_delta_contains. An empty result does not prove C empty.
// Throws CapacityError when |M| > 8.
std::optional<TallShift> lattice_find_first(const AngleAssignment& assignment,
                                            double delta,
                                            const SearchWindow& window);

}  // namespace zetauniv
