#include "bgap/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "bgap/error.hpp"

namespace bgap {

PrimeTable build_prime_table(std::int64_t limit, std::size_t memory_budget) {
  require(limit >= 2, "build_prime_table: limit must be >= 2, got " + std::to_string(limit));
  require(limit < (std::int64_t{1} << 32) - 1,
          "build_prime_table: limit must fit the 32-bit spf entries");
  // spf array plus a generous 1/8 allowance for the prime list.
  const double bytes = static_cast<double>(limit + 1) * sizeof(std::uint32_t) * 1.125;
  if (bytes > static_cast<double>(memory_budget)) {
    fail_validation("build_prime_table: limit " + std::to_string(limit) + " needs ~" +
                    std::to_string(static_cast<long long>(bytes / (1 << 20))) +
                    " MiB, over the configured budget of " +
                    std::to_string(memory_budget >> 20) + " MiB");
  }

  PrimeTable t;
  t.limit_ = limit;
  t.spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  const auto lim = static_cast<std::uint64_t>(limit);
  for (std::uint64_t i = 2; i <= lim; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = t.spf_[i];
    for (const std::uint32_t p : t.primes_) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > si || m > lim) break;
      t.spf_[m] = p;
    }
  }
  return t;
}

void PrimeTable::check_range(std::int64_t n, std::int64_t lo, const char* op) const {
  if (n < lo || n > limit_) {
    fail_validation(std::string(op) + ": argument " + std::to_string(n) + " outside table range [" +
                    std::to_string(lo) + ", " + std::to_string(limit_) + "]");
  }
}

std::uint32_t PrimeTable::spf(std::int64_t n) const {
  check_range(n, 2, "spf");
  return spf_unchecked(n);
}

bool PrimeTable::is_prime(std::int64_t n) const {
  check_range(n, 0, "is_prime");
  return is_prime_unchecked(n);
}

PrimeFactors PrimeTable::distinct_primes_unchecked(std::int64_t n) const {
  PrimeFactors f;
  while (n > 1) {
    const std::uint32_t p = spf_[static_cast<std::size_t>(n)];
    f.p[static_cast<std::size_t>(f.count++)] = p;
    while (n % p == 0) n /= p;
  }
  return f;
}

PrimeFactors PrimeTable::distinct_primes(std::int64_t n) const {
  check_range(n, 1, "distinct_primes");
  return distinct_primes_unchecked(n);
}

double varpi(std::int64_t n, const PrimeTable& t) {
  t.check_range(n, 2, "varpi");
  return t.is_prime_unchecked(n) ? std::log(static_cast<double>(n)) : 0.0;
}

int mobius(std::int64_t n, const PrimeTable& t) {
  t.check_range(n, 1, "mobius");
  int sign = 1;
  while (n > 1) {
    const std::uint32_t p = t.spf_unchecked(n);
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

std::int64_t totient(std::int64_t n, const PrimeTable& t) {
  t.check_range(n, 1, "totient");
  std::int64_t phi = n;
  const PrimeFactors f = t.distinct_primes_unchecked(n);
  for (int i = 0; i < f.count; ++i) phi = phi / f.p[i] * (f.p[i] - 1);
  return phi;
}

std::int64_t tau(std::int64_t n, const PrimeTable& t) {
  t.check_range(n, 1, "tau");
  std::int64_t result = 1;
  while (n > 1) {
    const std::uint32_t p = t.spf_unchecked(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= e + 1;
  }
  return result;
}

namespace {

std::vector<std::int64_t> sf_divisors(const PrimeFactors& f, std::int64_t bound) {
  std::vector<std::int64_t> out{1};
  if (bound < 1) return {};
  for (int i = 0; i < f.count; ++i) {
    const std::size_t m = out.size();
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t d = out[j] * f.p[i];
      if (d <= bound) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::int64_t> squarefree_divisors(std::int64_t n, std::int64_t bound,
                                              const PrimeTable& t) {
  t.check_range(n, 1, "squarefree_divisors");
  require(bound >= 1, "squarefree_divisors: bound must be >= 1");
  return sf_divisors(t.distinct_primes_unchecked(n), bound);
}

PrimeFactors distinct_primes_trial(std::int64_t n) {
  require(n >= 1, "distinct_primes_trial: n must be >= 1");
  PrimeFactors f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    f.p[static_cast<std::size_t>(f.count++)] = static_cast<std::uint32_t>(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) f.p[static_cast<std::size_t>(f.count++)] = static_cast<std::uint32_t>(n);
  return f;
}

int mobius_trial(std::int64_t n) {
  require(n >= 1, "mobius_trial: n must be >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

std::int64_t totient_trial(std::int64_t n) {
  const PrimeFactors f = distinct_primes_trial(n);
  std::int64_t phi = n;
  for (int i = 0; i < f.count; ++i) phi = phi / f.p[i] * (f.p[i] - 1);
  return phi;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  require(m >= 1, "inverse_mod: modulus must be >= 1");
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = ((a % m) + m) % m;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) fail_validation("inverse_mod: argument not invertible");
  return ((s0 % m) + m) % m;
}

}  // namespace bgap
