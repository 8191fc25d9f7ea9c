#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zetauniv/ddouble.hpp"
#include "zetauniv/primes.hpp"
#include "zetauniv/types.hpp"

namespace zetauniv {

// Cutoff Y = (log T)^A of the truncated Euler product.
struct TruncationParams {
  double Y = 2.0;
  double A = 0.0;

  static TruncationParams from_height(double T, double A);
};

// Fractional phases frac(tau log p / 2pi) for a fixed list of primes. The
// expensive split-precision product base * log p / 2pi is done once; any
// offset is then added in double-double.
class PhaseCache {
public:
  PhaseCache(std::int64_t base, std::span<const std::uint32_t> primes);

  std::size_t size() const { return frequencies_.size(); }
  std::int64_t base() const { return base_; }
  double frequency(std::size_t i) const { return frequencies_[i].to_double(); }
  double base_phase(std::size_t i) const { return base_phases_[i]; }

  // frac((base + offset) log p_i / 2pi) in [0, 1).
  double phase(std::size_t i, double offset) const;

private:
  std::int64_t base_;
  std::vector<dd::DDouble> frequencies_;
  std::vector<double> base_phases_;
};

// -sum_{p <= Y} log(1 - p^{-(s + i tau)}), principal logs.
// Throws TableError when Y exceeds the table limit.
Complex log_euler_truncated(ComplexPoint s, TallShift shift,
                            const PrimeTable& table, double Y);

// sum_{p^k <= y} 1 / (k p^{k(s + i tau)}).
Complex log_primepower_sum(ComplexPoint s, TallShift shift,
                           const PrimeTable& table, double y);

struct TailDifference {
  Complex value;
  double bound;  // Y^{1/2 - sigma} / log Y
  bool within;   // |value| <= constant * bound
};

inline constexpr double kDefaultBoundConstant = 10.0;

// log_euler_truncated - log_primepower_sum at the same cutoff.
TailDifference tail_difference(ComplexPoint s, TallShift shift,
                               const PrimeTable& table, double Y,
                               double constant = kDefaultBoundConstant);

// Evaluates -sum_p log(1 - c_p p^{-(s_j + i tau)}) at a fixed set of points
// s_j for many shifts tau. Powers p^{-s_j} are tabulated once.
class ShiftedEulerSum {
public:
  ShiftedEulerSum(std::span<const ComplexPoint> points,
                  std::span<const std::uint32_t> primes, std::int64_t base = 0);

  std::size_t points() const { return n_points_; }
  std::size_t primes() const { return cache_.size(); }

  // out[j] = -sum_p log(1 - p^{-(s_j + i (base + offset))}).
  void evaluate(double offset, std::span<Complex> out) const;
  std::vector<Complex> evaluate(double offset) const;

private:
  std::size_t n_points_;
  PhaseCache cache_;
  std::vector<Complex> powers_;  // [point][prime] -> p^{-s_j}
};

}  // namespace zetauniv
