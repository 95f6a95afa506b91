#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bgap {

/// Default cap on PrimeTable memory (spf array plus prime list).
inline constexpr std::size_t kDefaultPrimeTableBudget = std::size_t{1} << 30;

/// Distinct prime factors of one integer, ascending. 15 primes already
/// exceed 2^63, so a fixed array is enough.
struct PrimeFactors {
  std::array<std::uint32_t, 15> p{};
  int count = 0;
};

/// Smallest-prime-factor table for 0..limit, built with a linear sieve.
/// Immutable after construction; safe for concurrent reads.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::int64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  /// Least prime dividing n, for 2 <= n <= limit.
  std::uint32_t spf(std::int64_t n) const;
  bool is_prime(std::int64_t n) const;
  /// Distinct prime factors of n (1 <= n <= limit).
  PrimeFactors distinct_primes(std::int64_t n) const;

  // Unchecked variants for hot loops; callers validate the range once.
  std::uint32_t spf_unchecked(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  bool is_prime_unchecked(std::int64_t n) const {
    return n >= 2 && spf_[static_cast<std::size_t>(n)] == static_cast<std::uint32_t>(n);
  }
  PrimeFactors distinct_primes_unchecked(std::int64_t n) const;

  /// Throws ValidationError naming `op` unless lo <= n <= limit.
  void check_range(std::int64_t n, std::int64_t lo, const char* op) const;

 private:
  friend PrimeTable build_prime_table(std::int64_t limit, std::size_t memory_budget);

  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable build_prime_table(std::int64_t limit,
                             std::size_t memory_budget = kDefaultPrimeTableBudget);

/// log n for prime n, 0 otherwise.
double varpi(std::int64_t n, const PrimeTable& t);
int mobius(std::int64_t n, const PrimeTable& t);
std::int64_t totient(std::int64_t n, const PrimeTable& t);
std::int64_t tau(std::int64_t n, const PrimeTable& t);
/// Squarefree divisors d of n with d <= bound, ascending.
std::vector<std::int64_t> squarefree_divisors(std::int64_t n, std::int64_t bound,
                                              const PrimeTable& t);

// Table-free versions by trial division, for moduli and other small values
// that need not lie inside a sieve table.
PrimeFactors distinct_primes_trial(std::int64_t n);
int mobius_trial(std::int64_t n);
std::int64_t totient_trial(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// Inverse of a modulo m (m >= 1, gcd(a, m) = 1); returns 0 when m = 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

}  // namespace bgap
