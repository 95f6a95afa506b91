#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgap/admissible.hpp"
#include "bgap/parallel.hpp"
#include "bgap/primes.hpp"
#include "bgap/report.hpp"
#include "bgap/testfn.hpp"

namespace bgap {

/// |x|_T, the distance from x to the nearest integer.
double torus_norm(double x);

/// Rotation by (gamma0, kappa) on Z/g + T^d. Ergodicity (gamma0 generating
/// Z/g, kappa rationally independent) is assumed, not checked.
struct KroneckerSystem {
  std::int64_t g = 1;
  std::int64_t gamma0 = 0;
  std::vector<double> kappa;

  int d() const { return static_cast<int>(kappa.size()); }
};

KroneckerSystem make_system(std::int64_t g, std::int64_t gamma0, std::vector<double> kappa);
/// kappa_c = frac(sqrt(p_c)) for the first d primes.
std::vector<double> sqrt_primes(int d);

/// Half-open cube prod_c [corner_c, corner_c + side) on T^d.
struct Cube {
  std::vector<double> corner;
  double side = 1.0;
};

struct BoxPiece {
  std::int64_t gamma = 0;
  Cube cube;
};

/// Disjoint union of (group element, cube) pieces.
class BoxSet {
 public:
  BoxSet() = default;
  /// Validates dimensions, ranges and pairwise disjointness.
  BoxSet(const KroneckerSystem& sys, std::vector<BoxPiece> pieces);

  static BoxSet whole(const KroneckerSystem& sys);
  static BoxSet empty() { return BoxSet(); }

  const std::vector<BoxPiece>& pieces() const { return pieces_; }
  double measure() const { return measure_; }

 private:
  std::vector<BoxPiece> pieces_;
  double measure_ = 0.0;
};

/// nu(A cap S^-n A), exact up to double rounding.
double correlation(const KroneckerSystem& sys, const BoxSet& A, std::int64_t n);

/// Batched correlation through the SIMD kernels; |n| < 2^51.
void correlations(const KroneckerSystem& sys, const BoxSet& A, std::span<const std::int64_t> n,
                  std::span<double> out);

/// All 0 <= n <= n_max with correlation(n) >= measure(A)^2 - eps.
std::vector<std::int64_t> khintchine_set(const KroneckerSystem& sys, const BoxSet& A, double eps,
                                         std::int64_t n_max);

/// All primes p <= p_max with correlation(p - 1) >= measure(A)^2 - eps.
std::vector<std::int64_t> shifted_prime_recurrence_set(const KroneckerSystem& sys,
                                                       const BoxSet& A, double eps,
                                                       std::int64_t p_max, const PrimeTable& t);

/// Trapezoid: 0 on [delta0, 1), rising on [0, delta1], 1 on
/// [delta1, delta0 - delta1], falling on [delta0 - delta1, delta0].
struct BumpPsi {
  double delta0 = 0.0;
  double delta1 = 0.0;
  std::vector<std::complex<double>> fourier;  // alpha_j for 0 <= j <= K; alpha_-j = conj
  double C0 = 0.0;

  int K() const { return static_cast<int>(fourier.size()) - 1; }
  /// Closed-form alpha_j for any j.
  std::complex<double> alpha(std::int64_t j) const;
  double envelope(std::int64_t j) const;
  double value(double x) const;
  /// alpha_0 + sum_{1 <= |j| <= K} alpha_j e(j x).
  double partial_sum(double x, int K) const;
};

BumpPsi build_bump(double delta0, double delta1, int K = 10000);

/// Least L0 >= 2 with (1 - 1/L0)^d > (1 - eps1 / g_norm1^2)^(1/3).
std::int64_t cube_pair_L0(int d, double eps1, double g_norm1);

struct K0Choice {
  std::int64_t K0 = 0;
  bool capped = false;
};

/// Least K0 with (log K0 + 1/(delta1 K0) + 1)^(d-1) / K0 below
/// (delta0 - delta1)^d delta1 (1 - (1 - 1/L0)^d) / (2^d C0^d d), or `cap`.
K0Choice cube_pair_K0(int d, double delta0, double delta1, double C0, std::int64_t L0,
                    std::int64_t cap);

/// sum varpi(n + h_i) Omega_n corr(n + h_i - 1) against
/// (measure(A)^2 - eps) J_i N W^k / ((log R)^k phi(W)^(k+1)).
SumReport weighted_correlation_sum(const SieveParams& p, const TestFunction& F,
                                   const KroneckerSystem& sys, const BoxSet& A, int i, double eps,
                                   const PrimeTable& t, const Exec& exec = {});

struct CubePairSpec {
  std::vector<std::int64_t> a;  // cube C_a has corner a * eta0
  std::vector<std::int64_t> b;
  double eta0 = 0.5;
  double eps1 = 0.01;
  double g_norm1 = 0.0;  // 0: use eta0^d
  std::int64_t k0_cap = 1000000;
};

/// The cube-pair sum with h_0 and the torus part of `sys`, against
/// (1 - 1/L0)^(3d) eta0^(2d) J_0 N W^k / ((log R)^k phi(W)^(k+1)).
SumReport cube_pair_sum(const SieveParams& p, const TestFunction& F,
                           const KroneckerSystem& sys, const CubePairSpec& spec,
                           const PrimeTable& t, const Exec& exec = {});

}  // namespace bgap
