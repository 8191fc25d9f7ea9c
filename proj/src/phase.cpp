#include "zetauniv/phase.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace zetauniv {

TallShift TallShift::normalized() const {
  double whole = std::floor(offset);
  return {base + static_cast<std::int64_t>(whole), offset - whole};
}

TallShift TallShift::from_double(double tau) {
  double whole = std::floor(tau);
  return {static_cast<std::int64_t>(whole), tau - whole};
}

dd::DDouble log_dd(std::uint64_t n) {
  return dd::log(dd::DDouble(static_cast<double>(n)));
}

std::shared_ptr<const std::vector<dd::DDouble>> log_table(std::size_t n_max) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<dd::DDouble>> table;

  std::lock_guard<std::mutex> lock(mutex);
  if (table && table->size() > n_max) return table;

  std::size_t size = std::max<std::size_t>(n_max + 1, 1024);
  if (table) size = std::max(size, 2 * table->size());

  // Linear sieve: every composite n = p * m with p its least prime factor,
  // so only primes need a genuine double-double log.
  auto logs = std::make_shared<std::vector<dd::DDouble>>(size);
  std::vector<std::uint32_t> least(size, 0);
  std::vector<std::uint32_t> primes;
  (*logs)[1] = dd::DDouble(0.0);
  for (std::size_t n = 2; n < size; ++n) {
    if (least[n] == 0) {
      least[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
      (*logs)[n] = log_dd(n);
    }
    for (std::uint32_t p : primes) {
      std::size_t m = n * p;
      if (p > least[n] || m >= size) break;
      least[m] = p;
      (*logs)[m] = (*logs)[p] + (*logs)[n];
    }
  }
  table = std::move(logs);
  return table;
}

dd::DDouble frequency_dd(std::uint64_t p) { return log_dd(p) / dd::kTwoPi; }

double phase_fraction(TallShift tau, dd::DDouble frequency) {
  dd::DDouble x =
      frequency * static_cast<double>(tau.base) + frequency * tau.offset;
  double f = dd::frac(x).to_double();
  return f >= 1.0 ? 0.0 : f;
}

double reduced_angle(TallShift tau, dd::DDouble log_n) {
  dd::DDouble x = log_n * static_cast<double>(tau.base) + log_n * tau.offset;
  double k = std::floor(x.hi / dd::kTwoPi.hi);
  double r = (x - dd::kTwoPi * k).to_double();
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

}  // namespace zetauniv
