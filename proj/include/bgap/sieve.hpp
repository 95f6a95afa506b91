#pragma once

#include <cstdint>

#include "bgap/admissible.hpp"
#include "bgap/exact.hpp"
#include "bgap/parallel.hpp"
#include "bgap/primes.hpp"
#include "bgap/report.hpp"
#include "bgap/testfn.hpp"

namespace bgap {

enum class OmegaMode {
  kSeparable,  // prod_j S_j(n), one divisor sum per coordinate
  kEnumerate,  // every tuple (d_0..d_k) with d_j | n + h_j
};

/// Throws unless the table covers every n + h_j for n ~ N.
void check_table(const SieveParams& p, const PrimeTable& t);

/// sum over d_j | n + h_j of lambda_d(F), accumulated exactly and rounded once.
double omega_root(std::int64_t n, const SieveParams& p, const TestFunction& F,
                  const PrimeTable& t, OmegaMode mode = OmegaMode::kSeparable);

/// Omega_n(F) = omega_root^2.
double omega_n(std::int64_t n, const SieveParams& p, const TestFunction& F, const PrimeTable& t,
               OmegaMode mode = OmegaMode::kSeparable);

/// N W^k / phi(W)^(k+1), the common factor of both key-formula main terms.
double main_scale(const SieveParams& p);
double predicted_omega_sum(const SieveParams& p, const TestFunction& F);
double predicted_weighted_sum(const SieveParams& p, const TestFunction& F, int i);

/// Exact partial sums over progression indices [lo, hi).
ExactSum omega_sum_range(const SieveParams& p, const TestFunction& F, const PrimeTable& t,
                         std::int64_t lo, std::int64_t hi);
ExactSum weighted_prime_sum_range(const SieveParams& p, const TestFunction& F, int i,
                                  const PrimeTable& t, std::int64_t lo, std::int64_t hi);

SumReport omega_sum(const SieveParams& p, const TestFunction& F, const PrimeTable& t,
                    const Exec& exec = {});
SumReport weighted_prime_sum(const SieveParams& p, const TestFunction& F, int i,
                             const PrimeTable& t, const Exec& exec = {});

enum class Denominator {
  kLcm,      // [d_0,e_0]...[d_k,e_k]
  kTotient,  // phi([d_0,e_0]...[d_k,e_k])
};

enum class SumRoute {
  kDirect,    // loop over (d, e) tuples
  kDiagonal,  // k = 0 only: sum_r h(r) (sum_{r|d} u(d)) (sum_{r|e} u(e))
};

/// Finite left side of the sieve-weight identity: the sum over tuples with
/// W, [d_0,e_0], ..., [d_k,e_k] pairwise coprime of
/// lambda_d(F1) lambda_e(F2) / denominator. Accumulated exactly.
double maynard_lhs(int k, std::int64_t W, std::int64_t R, const TestFunction& F1,
                   const TestFunction& F2, Denominator kind, const PrimeTable& t,
                   SumRoute route = SumRoute::kDirect, double budget = 5e7);

/// (W/phi(W))^(k+1) (log R)^-(k+1) prod_j int f1' f2'.
double maynard_rhs(int k, std::int64_t W, std::int64_t R, const TestFunction& F1,
                   const TestFunction& F2);

}  // namespace bgap
