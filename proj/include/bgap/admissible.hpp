#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bgap {

/// True iff no prime p <= |h| has the residues h_j mod p covering Z/p.
/// Duplicate entries are rejected.
bool is_admissible(std::span<const std::int64_t> h);

struct AdmissibleTuple {
  std::vector<std::int64_t> h;

  int k() const { return static_cast<int>(h.size()) - 1; }
  std::int64_t diameter() const { return h.back() - h.front(); }
};

/// Validates strictly increasing, non-negative, admissible.
AdmissibleTuple make_tuple(std::vector<std::int64_t> h);

/// h_j = j * W0 * prod_{p <= k+1} p.
AdmissibleTuple standard_tuple(int k, std::int64_t W0);

/// W0 times the primorial of w; throws on int64 overflow.
std::int64_t compute_W(std::int64_t w, std::int64_t W0);

/// A gap value a in [h_0, h_k] outside the tuple, with the prime rho that
/// divides n + a for every n = b (mod W).
struct GapCongruence {
  std::int64_t a = 0;
  std::int64_t rho = 0;
};

struct ResidueChoice {
  std::int64_t b = 0;
  std::vector<GapCongruence> gaps;
};

/// Smallest b in [1, W] with b = 1 (mod W0) and gcd(b + h_j, W) = 1 for all j.
/// With `consecutive`, b must additionally make every gap value a composite
/// through some prime rho <= w dividing b + a.
ResidueChoice choose_b(const AdmissibleTuple& tuple, std::int64_t w, std::int64_t W0,
                       bool consecutive);

/// User-facing parameter set before validation.
struct SieveConfig {
  std::int64_t N = 1000000;
  double theta = 0.1;
  int k = 2;
  std::int64_t w = 5;
  std::int64_t W0 = 1;
  std::optional<std::vector<std::int64_t>> tuple;  // default: standard_tuple(k, W0)
  std::optional<std::int64_t> b;                   // default: choose_b
  std::optional<std::int64_t> R;                   // default: floor(N^theta)
  bool consecutive = false;
};

/// Validated sieve parameters. n ranges over N <= n <= 2N with n = b (mod W).
struct SieveParams {
  std::int64_t N = 0;
  double theta = 0.0;
  std::int64_t R = 0;
  bool r_override = false;
  std::int64_t w = 0;
  std::int64_t W0 = 0;
  std::int64_t W = 0;
  std::int64_t b = 0;
  AdmissibleTuple tuple;
  bool consecutive = false;
  std::vector<GapCongruence> gaps;

  int k() const { return tuple.k(); }
  double log_R() const;
  /// log R / log N; equals theta unless R was overridden.
  double theta_eff() const;
  std::int64_t first_n() const;
  /// Number of n ~ N in the progression.
  std::int64_t count() const;
  std::int64_t n_at(std::int64_t index) const { return first_n() + index * W; }
  /// Smallest prime-table limit covering every n + h_j.
  std::int64_t table_limit() const { return 2 * N + tuple.h.back() + 1; }
  /// phi(W), exact.
  std::int64_t phi_W() const;
};

SieveParams make_params(const SieveConfig& cfg);

/// Re-checks every invariant; error messages name the violated assumption.
void validate(const SieveParams& p);

}  // namespace bgap
