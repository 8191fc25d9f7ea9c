#pragma once

#include <complex>
#include <cstdint>

namespace zetauniv {

using Complex = std::complex<double>;

// s = sigma + i t.
using ComplexPoint = std::complex<double>;

// A height tau = base + offset. The integer part is kept exact so that
// tau * log(p) / 2pi can be reduced mod 1 without losing the fraction, even
// for base up to 1e12.
struct TallShift {
  std::int64_t base = 0;
  double offset = 0.0;

  double approx() const { return static_cast<double>(base) + offset; }

  TallShift plus(double du) const { return {base, offset + du}; }

  // Moves whole units of the offset into the base so |offset| < 1.
  TallShift normalized() const;

  static TallShift from_double(double tau);
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace zetauniv
