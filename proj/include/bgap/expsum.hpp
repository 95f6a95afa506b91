#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bgap/admissible.hpp"
#include "bgap/parallel.hpp"
#include "bgap/primes.hpp"
#include "bgap/report.hpp"
#include "bgap/testfn.hpp"

namespace bgap {

/// alpha = a/q + theta with 1 <= a <= q, gcd(a, q) = 1.
struct RationalPoint {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double theta = 0.0;
};

RationalPoint make_point(std::int64_t a, std::int64_t q, double theta = 0.0);

/// e(y) = exp(2 pi i y). Exact at multiples of 1/4.
std::complex<double> unit_phase(double y);

/// sum_{n = x}^{2x} e(n theta), closed form.
std::complex<double> geometric_sum(std::int64_t x, double theta);

/// sum over x <= n <= 2x, n = b (mod D) of varpi(n) e(n alpha).
std::complex<double> prime_expsum(std::int64_t x, std::int64_t D, std::int64_t b,
                                  const RationalPoint& pt, const PrimeTable& t,
                                  const Exec& exec = {});

/// mu(v) e(a b vbar / u) / phi([D, q]) * sum_{n ~ x} e(n theta), where
/// u = (D, q), v = q / u, vbar = v^-1 mod u; zero unless gcd(u, v) = 1.
std::complex<double> progression_main_term(std::int64_t x, std::int64_t D, std::int64_t b,
                                       const RationalPoint& pt);

struct GridMaximum {
  double value = 0.0;  // a lower bound for the true supremum over |theta| <= delta
  std::int64_t a = 0;
  double theta = 0.0;
  int grid = 0;
};

/// max over a coprime to q and theta_i = delta (2i - (G-1)) / (G-1) of
/// |prime sum - mu(q)/phi(q) sum e(n theta)|.
GridMaximum empirical_R(std::int64_t q, double delta, std::int64_t x, int theta_grid,
                        const PrimeTable& t, const Exec& exec = {});

/// sum_{n ~ N, n = b (W)} varpi(n + h_i) e((n + h_i) alpha) Omega_n, with the
/// q | W main term as prediction; otherwise prediction 0 and the envelope
/// N W^k / ((log R)^k phi(W)^(k+1) w^0.99) in extra["bound"].
SumReport weighted_expsum(const SieveParams& p, const TestFunction& F, int i,
                          const RationalPoint& pt, const PrimeTable& t, const Exec& exec = {});

struct Approximation {
  std::int64_t a = 1;
  std::int64_t q = 1;
};

/// Least q <= x with |q alpha - a| <= 1/x (torus distance), via convergents.
Approximation dirichlet_approx(double alpha, double x);

struct ArcExponents {
  double p_exp = 1.0 / 3.0 - 1.0 / 99.0;
  double q_exp = 1.0 - 1.0 / 49.0;
};

enum class ArcKind { kMajor, kMinor };

struct ArcLabel {
  ArcKind kind = ArcKind::kMinor;
  std::int64_t a = 1;
  std::int64_t q = 1;
  double P = 0.0;
  double Q = 0.0;
};

ArcLabel classify_arc(double alpha, std::int64_t N, const ArcExponents& ex = {});

struct MinorArcRecord {
  double alpha = 0.0;
  std::int64_t a = 1;
  std::int64_t q = 1;
  double offset = 0.0;           // alpha - a/q
  double magnitude = 0.0;        // |weighted_expsum|
  double major_magnitude = 0.0;  // |q|W main term| at theta = 0
  double ratio = 0.0;
  double bp_shape = 0.0;         // (1+|offset|N)(log N)^3 (u N/(W q^.5) + q^.5 N^.5/u^.5 + N^.8/W^.4)
  double power_saving = 0.0;     // N^(1 - 1/999)
};

std::vector<MinorArcRecord> minor_arc_scan(const SieveParams& p, const TestFunction& F, int i,
                                           const std::vector<double>& alphas,
                                           const PrimeTable& t, const ArcExponents& ex = {},
                                           const Exec& exec = {});

nlohmann::json to_json(const MinorArcRecord& r);

}  // namespace bgap
