#pragma once

#include <cstdint>
#include <vector>

#include "bgap/dynamics.hpp"
#include "bgap/sieve.hpp"

namespace bgap {

struct ClusterReport {
  std::int64_t n = 0;
  std::vector<int> hit_indices;       // i with n + h_i prime and corr(n + h_i - 1) >= threshold
  std::vector<std::int64_t> primes;   // n + h_i for those i
  std::int64_t width = 0;             // primes.back() - primes.front()
  bool consecutive_checked = false;
  bool consecutive = false;           // no unlisted prime strictly between first and last
};

/// sum Omega_n (sum_i varpi(n + h_i)(corr(n + h_i - 1) - (mu(A)^2 - eps)) - m log 3N).
/// Positive values certify a window with m + 1 good primes.
SumReport detector_sum(const SieveParams& p, const TestFunction& F, const KroneckerSystem& sys,
                       const BoxSet& A, double eps, int m, const PrimeTable& t,
                       const Exec& exec = {});

/// Every n ~ N, n = b (W) with at least m + 1 good indices. Never reads Omega.
std::vector<ClusterReport> scan_clusters(const SieveParams& p, const KroneckerSystem& sys,
                                         const BoxSet& A, double eps, int m,
                                         const PrimeTable& t, const Exec& exec = {});

/// Attaches the consecutiveness flag. With p.consecutive, a prime at any gap
/// position n + a_j is a broken congruence and raises InvariantError.
std::vector<ClusterReport> consecutive_filter(std::vector<ClusterReport> reports,
                                              const SieveParams& p, const PrimeTable& t);

/// Re-checks primality, thresholds and width from scratch; true when sound.
bool reverify(const ClusterReport& r, const SieveParams& p, const KroneckerSystem& sys,
              const BoxSet& A, double eps, const PrimeTable& t);

nlohmann::json to_json(const ClusterReport& r);

}  // namespace bgap
