#include "zetauniv/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetauniv/errors.hpp"

namespace zetauniv {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::size_t estimated_bytes(std::uint64_t limit) {
  if (limit < 2) return 0;
  double x = static_cast<double>(limit);
  // pi(x) < 1.26 x / log x; each prime is stored once as a prime and once as
  // a prime power.
  double count = 1.26 * x / std::log(x) + 2.0;
  return static_cast<std::size_t>(
      count * (sizeof(std::uint32_t) + sizeof(PrimePower)));
}

}  // namespace

std::span<const std::uint32_t> PrimeTable::primes_up_to(double x) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x,
                             [](double v, std::uint32_t p) { return v < p; });
  return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

std::span<const PrimePower> PrimeTable::prime_powers_up_to(double x) const {
  auto it = std::upper_bound(
      prime_powers_.begin(), prime_powers_.end(), x,
      [](double v, const PrimePower& pp) { return v < pp.n; });
  return {prime_powers_.data(),
          static_cast<std::size_t>(it - prime_powers_.begin())};
}

double PrimeTable::von_mangoldt(std::uint64_t n) const {
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  if (n > limit_) throw TableError("von_mangoldt: n exceeds table limit");
  auto it = std::lower_bound(
      prime_powers_.begin(), prime_powers_.end(), n,
      [](const PrimePower& pp, std::uint64_t v) { return pp.n < v; });
  if (it == prime_powers_.end() || it->n != n) return 0.0;
  return std::log(static_cast<double>(it->p));
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options) {
  if (limit > kMaxSieveLimit)
    throw DomainError("sieve_primes: limit " + std::to_string(limit) +
                      " exceeds 1e9");
  if (estimated_bytes(limit) > options.memory_budget)
    throw ResourceError("sieve_primes: table for limit " +
                        std::to_string(limit) + " exceeds memory budget");

  std::vector<std::uint32_t> primes;
  if (limit >= 2) {
    const std::uint64_t root = isqrt(limit);

    std::vector<char> small(root + 1, 1);
    std::vector<std::uint32_t> seeds;
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (!small[i]) continue;
      seeds.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    }

    const std::uint64_t seg = std::max<std::size_t>(options.segment_size, 64);
    std::vector<char> sieve(seg);
    std::vector<std::uint64_t> next(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i)
      next[i] = std::uint64_t{seeds[i]} * seeds[i];

    for (std::uint64_t low = 2; low <= limit; low += seg) {
      const std::uint64_t high = std::min(low + seg - 1, limit);
      std::fill(sieve.begin(), sieve.end(), 1);
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        std::uint64_t j = next[i];
        for (; j <= high; j += seeds[i]) sieve[j - low] = 0;
        next[i] = j;
      }
      for (std::uint64_t n = low; n <= high; ++n)
        if (sieve[n - low]) primes.push_back(static_cast<std::uint32_t>(n));
    }
  }

  // Higher powers are few (O(sqrt(limit))); merge them into the primes.
  std::vector<PrimePower> higher;
  for (std::uint32_t p : primes) {
    std::uint64_t pk = std::uint64_t{p} * p;
    if (pk > limit) break;
    for (std::uint32_t k = 2; pk <= limit; ++k, pk *= p)
      higher.push_back({p, k, static_cast<std::uint32_t>(pk)});
  }
  std::sort(higher.begin(), higher.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });

  std::vector<PrimePower> powers;
  powers.reserve(primes.size() + higher.size());
  std::size_t h = 0;
  for (std::uint32_t p : primes) {
    while (h < higher.size() && higher[h].n < p) powers.push_back(higher[h++]);
    powers.push_back({p, 1, p});
  }
  while (h < higher.size()) powers.push_back(higher[h++]);

  return PrimeTable(limit, std::move(primes), std::move(powers));
}

double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  std::uint64_t p = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

}  // namespace zetauniv
