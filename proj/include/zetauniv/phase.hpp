#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "zetauniv/ddouble.hpp"
#include "zetauniv/types.hpp"

namespace zetauniv {

// log(n) to ~32 significant digits.
dd::DDouble log_dd(std::uint64_t n);

// Shared table of log_dd(n) for n = 0..n_max (entry 0 unused). Grows on
// demand; the returned snapshot stays valid after later growth.
std::shared_ptr<const std::vector<dd::DDouble>> log_table(std::size_t n_max);

// log(p) / 2pi to ~32 significant digits: the frequency at which the phase
// of p^{-i tau} winds around the circle.
dd::DDouble frequency_dd(std::uint64_t p);

// frac(tau * frequency) in [0, 1).
double phase_fraction(TallShift tau, dd::DDouble frequency);

// (tau * log_n) mod 2pi in [0, 2pi).
double reduced_angle(TallShift tau, dd::DDouble log_n);

// Nearest-integer distance ||x||.
inline double circle_distance(double x) {
  double f = x - std::floor(x);
  return f > 0.5 ? 1.0 - f : f;
}

}  // namespace zetauniv
