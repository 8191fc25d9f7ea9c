#include "zetauniv/euler_product.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "zetauniv/errors.hpp"
#include "zetauniv/phase.hpp"

namespace zetauniv {

namespace {

void check_cutoff(const PrimeTable& table, double Y, const char* who) {
  if (Y > static_cast<double>(table.limit()))
    throw TableError(std::string(who) + ": cutoff " + std::to_string(Y) +
                     " exceeds prime table limit " +
                     std::to_string(table.limit()));
}

Complex unit(double turns) {
  double angle = kTwoPi * turns;
  return {std::cos(angle), std::sin(angle)};
}

// p^{-(s + i tau)} with the tau phase reduced in split precision.
Complex shifted_power(std::uint32_t p, ComplexPoint s, TallShift shift,
                      int k = 1) {
  TallShift height = shift.plus(s.imag());
  double phase = phase_fraction(height, frequency_dd(p));
  double modulus = std::exp(-k * s.real() * std::log(static_cast<double>(p)));
  return modulus * unit(-k * phase);
}

}  // namespace

TruncationParams TruncationParams::from_height(double T, double A) {
  if (!(T > 1.0)) throw ConfigError("TruncationParams: T must be > 1");
  double Y = std::pow(std::log(T), A);
  if (!(Y >= 2.0))
    throw ConfigError("TruncationParams: Y = (log T)^A = " + std::to_string(Y) +
                      " is below 2");
  return {Y, A};
}

PhaseCache::PhaseCache(std::int64_t base, std::span<const std::uint32_t> primes)
    : base_(base) {
  frequencies_.reserve(primes.size());
  base_phases_.reserve(primes.size());
  for (std::uint32_t p : primes) {
    dd::DDouble f = frequency_dd(p);
    frequencies_.push_back(f);
    base_phases_.push_back(phase_fraction(TallShift{base, 0.0}, f));
  }
}

double PhaseCache::phase(std::size_t i, double offset) const {
  dd::DDouble x = frequencies_[i] * offset + base_phases_[i];
  double f = dd::frac(x).to_double();
  return f >= 1.0 ? 0.0 : f;
}

Complex log_euler_truncated(ComplexPoint s, TallShift shift,
                            const PrimeTable& table, double Y) {
  check_cutoff(table, Y, "log_euler_truncated");
  Complex sum = 0.0;
  for (std::uint32_t p : table.primes_up_to(Y))
    sum -= std::log(1.0 - shifted_power(p, s, shift));
  return sum;
}

Complex log_primepower_sum(ComplexPoint s, TallShift shift,
                           const PrimeTable& table, double y) {
  check_cutoff(table, y, "log_primepower_sum");
  Complex sum = 0.0;
  for (const PrimePower& pp : table.prime_powers_up_to(y)) {
    int k = static_cast<int>(pp.k);
    sum += shifted_power(pp.p, s, shift, k) / static_cast<double>(k);
  }
  return sum;
}

TailDifference tail_difference(ComplexPoint s, TallShift shift,
                               const PrimeTable& table, double Y,
                               double constant) {
  Complex value = log_euler_truncated(s, shift, table, Y) -
                  log_primepower_sum(s, shift, table, Y);
  double bound = Y > 1.0 ? std::pow(Y, 0.5 - s.real()) / std::log(Y)
                         : std::numeric_limits<double>::infinity();
  return {value, bound, std::abs(value) <= constant * bound};
}

ShiftedEulerSum::ShiftedEulerSum(std::span<const ComplexPoint> points,
                                 std::span<const std::uint32_t> primes,
                                 std::int64_t base)
    : n_points_(points.size()), cache_(base, primes) {
  powers_.resize(points.size() * primes.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      double lp = std::log(static_cast<double>(primes[i]));
      powers_[j * primes.size() + i] = std::exp(-points[j] * lp);
    }
  }
}

void ShiftedEulerSum::evaluate(double offset, std::span<Complex> out) const {
  const std::size_t n_primes = cache_.size();
  std::vector<Complex> rotation(n_primes);
  for (std::size_t i = 0; i < n_primes; ++i)
    rotation[i] = unit(-cache_.phase(i, offset));
  for (std::size_t j = 0; j < n_points_; ++j) {
    Complex sum = 0.0;
    const Complex* row = powers_.data() + j * n_primes;
    for (std::size_t i = 0; i < n_primes; ++i)
      sum -= std::log(1.0 - row[i] * rotation[i]);
    out[j] = sum;
  }
}

std::vector<Complex> ShiftedEulerSum::evaluate(double offset) const {
  std::vector<Complex> out(n_points_);
  evaluate(offset, out);
  return out;
}

}  // namespace zetauniv
