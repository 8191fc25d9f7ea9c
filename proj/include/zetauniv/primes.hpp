#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zetauniv {

struct PrimePower {
  std::uint32_t p;
  std::uint32_t k;
  std::uint32_t n;  // p^k

  bool operator==(const PrimePower&) const = default;
};

// Immutable table of the primes and prime powers up to `limit`.
class PrimeTable {
public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes,
             std::vector<PrimePower> prime_powers)
      : limit_(limit), primes_(std::move(primes)),
        prime_powers_(std::move(prime_powers)) {}

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::span<const PrimePower> prime_powers() const { return prime_powers_; }

  // Primes p <= x (a prefix of primes()).
  std::span<const std::uint32_t> primes_up_to(double x) const;
  // Prime powers p^k <= x (a prefix of prime_powers()).
  std::span<const PrimePower> prime_powers_up_to(double x) const;

  // Lambda(n) for n <= limit, via binary search in the prime-power list.
  double von_mangoldt(std::uint64_t n) const;

private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<PrimePower> prime_powers_;
};

struct SieveOptions {
  std::size_t segment_size = 1u << 16;
  // Refuse tables whose estimated footprint exceeds this many bytes.
  std::size_t memory_budget = std::size_t{1} << 30;
};

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000ULL;

// Segmented sieve of Eratosthenes. Throws DomainError for limit > 1e9 and
// ResourceError when the table would not fit in the memory budget.
PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options = {});

// Lambda(n): log p when n = p^k, else 0. Uses trial division, so it works
// without a table. Throws DomainError for n == 0.
double von_mangoldt(std::uint64_t n);

}  // namespace zetauniv
