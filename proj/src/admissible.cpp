#include "bgap/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "bgap/error.hpp"
#include "bgap/primes.hpp"

namespace bgap {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::string tuple_str(const std::vector<std::int64_t>& h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s + ")";
}

// Residues h_j mod p cover Z/p.
bool covers(const std::vector<std::int64_t>& h, std::int64_t p) {
  if (static_cast<std::int64_t>(h.size()) < p) return false;
  std::vector<char> seen(static_cast<std::size_t>(p), 0);
  std::int64_t hit = 0;
  for (const auto x : h) {
    char& s = seen[static_cast<std::size_t>(mod(x, p))];
    if (!s) {
      s = 1;
      ++hit;
    }
  }
  return hit == p;
}

}  // namespace

bool is_admissible(std::span<const std::int64_t> h) {
  std::vector<std::int64_t> v(h.begin(), h.end());
  std::set<std::int64_t> uniq(v.begin(), v.end());
  require(uniq.size() == v.size(), "is_admissible: duplicate entries in " + tuple_str(v));
  for (const auto p : primes_up_to(static_cast<std::int64_t>(v.size()))) {
    if (covers(v, p)) return false;
  }
  return true;
}

AdmissibleTuple make_tuple(std::vector<std::int64_t> h) {
  require(!h.empty(), "tuple must be non-empty");
  for (std::size_t i = 0; i < h.size(); ++i) {
    require(h[i] >= 0, "tuple entries must be non-negative: " + tuple_str(h));
    require(i == 0 || h[i] > h[i - 1], "tuple must be strictly increasing: " + tuple_str(h));
  }
  if (!is_admissible(h)) {
    for (const auto p : primes_up_to(static_cast<std::int64_t>(h.size()))) {
      if (covers(h, p))
        fail_validation("(I) tuple " + tuple_str(h) + " is not admissible: residues cover Z/" +
                        std::to_string(p));
    }
  }
  return AdmissibleTuple{std::move(h)};
}

AdmissibleTuple standard_tuple(int k, std::int64_t W0) {
  require(k >= 1, "standard_tuple: k must be >= 1");
  require(W0 >= 1, "standard_tuple: W0 must be >= 1");
  std::int64_t step = W0;
  for (const auto p : primes_up_to(k + 1)) step *= p;
  std::vector<std::int64_t> h(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) h[static_cast<std::size_t>(j)] = j * step;
  return make_tuple(std::move(h));
}

std::int64_t compute_W(std::int64_t w, std::int64_t W0) {
  require(w >= 2, "compute_W: w must be >= 2");
  require(W0 >= 1, "compute_W: W0 must be >= 1");
  std::int64_t W = W0;
  for (const auto p : primes_up_to(w)) {
    if (W > std::numeric_limits<std::int64_t>::max() / p)
      fail_validation("compute_W: W0 * primorial(" + std::to_string(w) + ") overflows 64 bits");
    W *= p;
  }
  return W;
}

ResidueChoice choose_b(const AdmissibleTuple& tuple, std::int64_t w, std::int64_t W0,
                       bool consecutive) {
  const std::int64_t W = compute_W(w, W0);
  const auto& h = tuple.h;
  const auto small = primes_up_to(w);

  // A prime p <= w, p not dividing W0, whose residues -h_j cover Z/p leaves
  // no admissible class; W0-primes are forced to b = 1 and never block.
  for (const auto p : small) {
    if (W0 % p != 0 && covers(h, p))
      fail_validation("choose_b: no residue b satisfies (III): tuple " + tuple_str(h) +
                      " covers every class mod prime " + std::to_string(p));
  }
  for (const auto x : h) {
    if (x % W0 != 0)
      fail_validation("choose_b: (II) W0=" + std::to_string(W0) + " does not divide h_j=" +
                      std::to_string(x));
  }

  std::vector<std::int64_t> gap_values;
  if (consecutive) {
    std::set<std::int64_t> in_tuple(h.begin(), h.end());
    for (std::int64_t a = h.front(); a <= h.back(); ++a)
      if (!in_tuple.count(a)) gap_values.push_back(a);
  }

  for (std::int64_t b = 1; b <= W; b += W0) {
    bool ok = true;
    for (const auto x : h) {
      if (gcd64(b + x, W) != 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ResidueChoice choice{b, {}};
    for (const auto a : gap_values) {
      std::int64_t rho = 0;
      for (const auto p : small) {
        if ((b + a) % p == 0) {
          rho = p;
          break;
        }
      }
      if (rho == 0) {
        ok = false;
        break;
      }
      choice.gaps.push_back({a, rho});
    }
    if (ok) return choice;
  }
  // Only reachable in consecutive mode.
  fail_validation("choose_b: no b in [1, W=" + std::to_string(W) +
                  "] makes every gap value of " + tuple_str(h) +
                  " divisible by a prime <= w=" + std::to_string(w) +
                  "; increase w (largest prime tried: " + std::to_string(small.back()) + ")");
}

double SieveParams::log_R() const { return std::log(static_cast<double>(R)); }

double SieveParams::theta_eff() const {
  return std::log(static_cast<double>(R)) / std::log(static_cast<double>(N));
}

std::int64_t SieveParams::first_n() const {
  const std::int64_t r = mod(b - N, W);
  return N + r;
}

std::int64_t SieveParams::count() const {
  const std::int64_t first = first_n();
  if (first > 2 * N) return 0;
  return (2 * N - first) / W + 1;
}

std::int64_t SieveParams::phi_W() const { return totient_trial(W); }

SieveParams make_params(const SieveConfig& cfg) {
  require(cfg.N >= 2, "N must be >= 2");
  require(cfg.w >= 2, "w must be >= 2");
  require(cfg.W0 >= 1, "W0 must be >= 1");
  SieveParams p;
  p.N = cfg.N;
  p.theta = cfg.theta;
  p.w = cfg.w;
  p.W0 = cfg.W0;
  p.W = compute_W(cfg.w, cfg.W0);
  p.consecutive = cfg.consecutive;

  if (cfg.tuple) {
    p.tuple = make_tuple(*cfg.tuple);
  } else {
    require(cfg.k >= 0, "k must be >= 0");
    p.tuple = cfg.k == 0 ? make_tuple({0}) : standard_tuple(cfg.k, cfg.W0);
  }

  if (cfg.R) {
    require(*cfg.R >= 2, "R must be >= 2");
    p.R = *cfg.R;
    p.r_override = true;
    p.theta = p.theta_eff();
  } else {
    require(cfg.theta > 0.0 && cfg.theta < 0.25, "theta must lie in (0, 1/4)");
    p.R = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(cfg.N), cfg.theta)));
    require(p.R >= 2, "R = floor(N^theta) = " + std::to_string(p.R) +
                          " < 2; every sieve weight degenerates (raise N or theta)");
  }

  if (cfg.b) {
    p.b = *cfg.b;
    if (cfg.consecutive) {
      // Recover the rho_j for the user's b; validate() checks them.
      std::set<std::int64_t> in_tuple(p.tuple.h.begin(), p.tuple.h.end());
      const auto small = primes_up_to(p.w);
      for (std::int64_t a = p.tuple.h.front(); a <= p.tuple.h.back(); ++a) {
        if (in_tuple.count(a)) continue;
        std::int64_t rho = 0;
        for (const auto q : small)
          if ((p.b + a) % q == 0) {
            rho = q;
            break;
          }
        if (rho == 0)
          fail_validation("consecutive: b=" + std::to_string(p.b) + " leaves gap value " +
                          std::to_string(a) + " coprime to every prime <= w");
        p.gaps.push_back({a, rho});
      }
    }
  } else {
    ResidueChoice c = choose_b(p.tuple, p.w, p.W0, p.consecutive);
    p.b = c.b;
    p.gaps = std::move(c.gaps);
  }
  validate(p);
  return p;
}

void validate(const SieveParams& p) {
  const auto& h = p.tuple.h;
  if (p.W != compute_W(p.w, p.W0)) throw InvariantError("W does not equal W0 * primorial(w)");
  if (!is_admissible(h)) fail_validation("(I) tuple " + tuple_str(h) + " is not admissible");
  for (const auto x : h) {
    if (x % p.W0 != 0)
      fail_validation("(II) W0=" + std::to_string(p.W0) + " does not divide h_j=" +
                      std::to_string(x));
  }
  require(p.b >= 1 && p.b <= p.W, "b must lie in [1, W=" + std::to_string(p.W) + "]");
  for (const auto x : h) {
    const std::int64_t g = gcd64(p.b + x, p.W);
    if (g != 1)
      fail_validation("(III) gcd(b + h_j, W) = " + std::to_string(g) + " for b=" +
                      std::to_string(p.b) + ", h_j=" + std::to_string(x));
  }
  if (mod(p.b, p.W0) != 1 % p.W0)
    fail_validation("(IV) b=" + std::to_string(p.b) + " is not 1 mod W0=" + std::to_string(p.W0));
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const PrimeFactors f = distinct_primes_trial(h[j] - h[i]);
      for (int t = 0; t < f.count; ++t) {
        if (f.p[t] > static_cast<std::uint32_t>(p.w))
          fail_validation("prime factor " + std::to_string(f.p[t]) + " of h_j - h_i = " +
                          std::to_string(h[j] - h[i]) + " exceeds w=" + std::to_string(p.w) +
                          "; pass a larger w");
      }
    }
  }
  if (p.consecutive) {
    for (const auto& g : p.gaps) {
      if (g.rho > p.w || (p.b + g.a) % g.rho != 0)
        throw InvariantError("consecutive congruence b = -a (mod rho) broken for a=" +
                             std::to_string(g.a));
    }
  }
  if (p.W > p.N) fail_validation("empty progression: W=" + std::to_string(p.W) + " > N=" +
                                 std::to_string(p.N));
}

}  // namespace bgap
