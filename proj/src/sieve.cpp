#include "bgap/sieve.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bgap/error.hpp"

namespace bgap {
namespace {

// mu(d) f(log d / log R) for every squarefree d | m below the support cut.
void coordinate_terms(std::int64_t m, const TestFunction& F, double log_R, std::int64_t d_lim,
                      const PrimeTable& t, std::vector<double>& out) {
  out.clear();
  const PrimeFactors pf = t.distinct_primes_unchecked(m);
  struct Node {
    std::int64_t d;
    int mu;
  };
  std::vector<Node> divs{{1, 1}};
  for (int i = 0; i < pf.count; ++i) {
    const std::size_t sz = divs.size();
    for (std::size_t j = 0; j < sz; ++j) {
      const std::int64_t d = divs[j].d * pf.p[i];
      if (d <= d_lim) divs.push_back({d, -divs[j].mu});
    }
  }
  for (const auto& node : divs) {
    const double v = F.f(std::log(static_cast<double>(node.d)) / log_R);
    if (v != 0.0) out.push_back(node.mu * v);
  }
}

// Largest d that can have f(log d / log R) != 0, with a margin of one.
std::int64_t support_limit(const TestFunction& F, double log_R) {
  return static_cast<std::int64_t>(std::floor(std::exp(F.T() * log_R))) + 1;
}

Dyadic omega_root_exact(std::int64_t n, const SieveParams& p, const TestFunction& F,
                        const PrimeTable& t, OmegaMode mode) {
  const double log_R = p.log_R();
  const std::int64_t d_lim = support_limit(F, log_R);
  const auto& h = p.tuple.h;
  thread_local std::vector<std::vector<double>> terms;
  terms.resize(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) coordinate_terms(n + h[j], F, log_R, d_lim, t, terms[j]);

  if (mode == OmegaMode::kSeparable) {
    Dyadic prod = Dyadic::from_int(1);
    for (const auto& tj : terms) {
      ExactSum s;
      for (const double v : tj) s.add(v);
      prod = prod * s.exact();
    }
    return prod;
  }

  // Odometer over the Cartesian product of the per-coordinate term lists.
  for (const auto& tj : terms)
    if (tj.empty()) return Dyadic();
  std::vector<std::size_t> idx(h.size(), 0);
  Dyadic total;
  while (true) {
    Dyadic term = Dyadic::from_int(1);
    for (std::size_t j = 0; j < h.size(); ++j) term = term * Dyadic(terms[j][idx[j]]);
    total += term;
    std::size_t j = 0;
    while (j < h.size() && ++idx[j] == terms[j].size()) idx[j++] = 0;
    if (j == h.size()) break;
  }
  return total;
}

void check_n(std::int64_t n, const SieveParams& p, const PrimeTable& t) {
  require(n >= 1, "omega_n: n must be >= 1");
  if (n + p.tuple.h.back() > t.limit())
    fail_validation("omega_n: prime table limit " + std::to_string(t.limit()) +
                    " is below n + max(h) = " + std::to_string(n + p.tuple.h.back()));
}

}  // namespace

void check_table(const SieveParams& p, const PrimeTable& t) {
  if (t.limit() < 2 * p.N + p.tuple.h.back())
    fail_validation("prime table limit " + std::to_string(t.limit()) +
                    " does not cover 2N + max(h) = " + std::to_string(2 * p.N + p.tuple.h.back()));
}

double omega_root(std::int64_t n, const SieveParams& p, const TestFunction& F,
                  const PrimeTable& t, OmegaMode mode) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  check_n(n, p, t);
  return omega_root_exact(n, p, F, t, mode).to_double();
}

double omega_n(std::int64_t n, const SieveParams& p, const TestFunction& F, const PrimeTable& t,
               OmegaMode mode) {
  const double r = omega_root(n, p, F, t, mode);
  return r * r;
}

double main_scale(const SieveParams& p) {
  const double W = static_cast<double>(p.W);
  const double phi = static_cast<double>(p.phi_W());
  return static_cast<double>(p.N) * std::pow(W, p.k()) / std::pow(phi, p.k() + 1);
}

double predicted_omega_sum(const SieveParams& p, const TestFunction& F) {
  return F.J_star() * main_scale(p) / std::pow(p.log_R(), p.k() + 1);
}

double predicted_weighted_sum(const SieveParams& p, const TestFunction& F, int i) {
  return F.J_i(i) * main_scale(p) / std::pow(p.log_R(), p.k());
}

ExactSum omega_sum_range(const SieveParams& p, const TestFunction& F, const PrimeTable& t,
                         std::int64_t lo, std::int64_t hi) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  check_table(p, t);
  ExactSum acc;
  for (std::int64_t idx = lo; idx < hi; ++idx) {
    const double r = omega_root_exact(p.n_at(idx), p, F, t, OmegaMode::kSeparable).to_double();
    acc.add_product(r, r);
  }
  return acc;
}

ExactSum weighted_prime_sum_range(const SieveParams& p, const TestFunction& F, int i,
                                  const PrimeTable& t, std::int64_t lo, std::int64_t hi) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  require(i >= 0 && i <= p.k(), "index i out of range 0..k");
  check_table(p, t);
  const std::int64_t hi_off = p.tuple.h[static_cast<std::size_t>(i)];
  ExactSum acc;
  for (std::int64_t idx = lo; idx < hi; ++idx) {
    const std::int64_t n = p.n_at(idx);
    if (!t.is_prime_unchecked(n + hi_off)) continue;
    const double r = omega_root_exact(n, p, F, t, OmegaMode::kSeparable).to_double();
    acc.add_product(std::log(static_cast<double>(n + hi_off)), r * r);
  }
  return acc;
}

SumReport omega_sum(const SieveParams& p, const TestFunction& F, const PrimeTable& t,
                    const Exec& exec) {
  check_table(p, t);
  const std::int64_t count = p.count();
  require(count > 0, "omega_sum: empty progression");
  const ExactSum s = parallel_reduce<ExactSum>(
      count, exec, [&](std::int64_t lo, std::int64_t hi, ExactSum& acc) {
        acc = omega_sum_range(p, F, t, lo, hi);
      });
  SumReport r;
  r.op = "omega_sum";
  r.measured = s.value();
  r.predicted = predicted_omega_sum(p, F);
  r.count = count;
  r.params = params_json(p, F);
  r.extra["J_star"] = real_json(F.J_star());
  return r;
}

SumReport weighted_prime_sum(const SieveParams& p, const TestFunction& F, int i,
                             const PrimeTable& t, const Exec& exec) {
  check_table(p, t);
  const std::int64_t count = p.count();
  require(count > 0, "weighted_prime_sum: empty progression");
  const ExactSum s = parallel_reduce<ExactSum>(
      count, exec, [&](std::int64_t lo, std::int64_t hi, ExactSum& acc) {
        acc = weighted_prime_sum_range(p, F, i, t, lo, hi);
      });
  SumReport r;
  r.op = "weighted_prime_sum";
  r.measured = s.value();
  r.predicted = predicted_weighted_sum(p, F, i);
  r.count = count;
  r.params = params_json(p, F);
  r.extra["i"] = i;
  r.extra["J_i"] = real_json(F.J_i(i));
  return r;
}

// ---------------------------------------------------------------------------
// Finite sieve-weight identity

namespace {

struct Weight {
  std::int64_t d;
  Dyadic u;  // mu(d) f(log d / log R) / d, or / phi(d), rounded once
};

std::int64_t gcd_weight(std::int64_t g, Denominator kind, const PrimeTable& t) {
  return kind == Denominator::kLcm ? g : totient(g, t);
}

std::vector<Weight> weights(const TestFunction& F, std::int64_t W, double log_R,
                            Denominator kind, const PrimeTable& t) {
  const std::int64_t d_lim = support_limit(F, log_R);
  t.check_range(d_lim, 1, "maynard_lhs (table must cover R^T)");
  std::vector<Weight> out;
  for (std::int64_t d = 1; d <= d_lim; ++d) {
    if (gcd64(d, W) != 1) continue;
    const int mu = mobius(d, t);
    if (mu == 0) continue;
    const double f = F.f(std::log(static_cast<double>(d)) / log_R);
    if (f == 0.0) continue;
    const double den = kind == Denominator::kLcm ? static_cast<double>(d)
                                                  : static_cast<double>(totient(d, t));
    out.push_back({d, Dyadic(mu * f / den)});
  }
  return out;
}

Dyadic lhs_direct_k0(const std::vector<Weight>& u1, const std::vector<Weight>& u2,
                     Denominator kind, const PrimeTable& t) {
  Dyadic total;
  for (const auto& a : u1) {
    Dyadic inner;
    for (const auto& b : u2)
      inner += b.u * Dyadic::from_int(gcd_weight(gcd64(a.d, b.d), kind, t));
    total += a.u * inner;
  }
  return total;
}

Dyadic lhs_direct(int k, const std::vector<Weight>& u1, const std::vector<Weight>& u2,
                  Denominator kind, const PrimeTable& t) {
  if (k == 0) return lhs_direct_k0(u1, u2, kind, t);
  struct Pair {
    std::int64_t lcm;
    Dyadic term;
  };
  std::vector<Pair> pairs;
  for (const auto& a : u1)
    for (const auto& b : u2) {
      const std::int64_t g = gcd64(a.d, b.d);
      pairs.push_back({a.d / g * b.d, a.u * b.u * Dyadic::from_int(gcd_weight(g, kind, t))});
    }
  Dyadic total;
  // Depth-first over coordinates, keeping the running product of lcms so each
  // new [d_j, e_j] is checked for coprimality against all earlier ones.
  auto rec = [&](auto&& self, int j, std::int64_t used, const Dyadic& acc) -> void {
    if (j > k) {
      total += acc;
      return;
    }
    for (const auto& pr : pairs) {
      if (gcd64(pr.lcm, used) != 1) continue;
      self(self, j + 1, used * pr.lcm, acc * pr.term);
    }
  };
  rec(rec, 0, 1, Dyadic::from_int(1));
  return total;
}

// h(r) with sum_{r | g} h(r) = gcd weight: phi for [d,e], prod (p-2) for phi([d,e]).
std::int64_t diagonal_h(std::int64_t r, Denominator kind, const PrimeTable& t) {
  if (kind == Denominator::kLcm) return totient(r, t);
  std::int64_t v = 1;
  const PrimeFactors f = t.distinct_primes(r);
  for (int i = 0; i < f.count; ++i) v *= static_cast<std::int64_t>(f.p[i]) - 2;
  return v;
}

Dyadic lhs_diagonal(const std::vector<Weight>& u1, const std::vector<Weight>& u2,
                    Denominator kind, const PrimeTable& t, std::int64_t d_max) {
  std::vector<Dyadic> U1(static_cast<std::size_t>(d_max) + 1), U2(U1.size());
  auto scatter = [&](const std::vector<Weight>& u, std::vector<Dyadic>& U) {
    for (const auto& w : u)
      for (const auto r : squarefree_divisors(w.d, w.d, t)) U[static_cast<std::size_t>(r)] += w.u;
  };
  scatter(u1, U1);
  scatter(u2, U2);
  Dyadic total;
  for (std::int64_t r = 1; r <= d_max; ++r) {
    const auto& a = U1[static_cast<std::size_t>(r)];
    const auto& b = U2[static_cast<std::size_t>(r)];
    if (a.is_zero() || b.is_zero()) continue;
    total += Dyadic::from_int(diagonal_h(r, kind, t)) * a * b;
  }
  return total;
}

}  // namespace

double maynard_lhs(int k, std::int64_t W, std::int64_t R, const TestFunction& F1,
                   const TestFunction& F2, Denominator kind, const PrimeTable& t,
                   SumRoute route, double budget) {
  require(k >= 0 && F1.k() == k && F2.k() == k, "maynard_lhs: test functions must have this k");
  require(R >= 2, "maynard_lhs: R must be >= 2");
  require(W >= 1, "maynard_lhs: W must be >= 1");
  const double log_R = std::log(static_cast<double>(R));
  const auto u1 = weights(F1, W, log_R, kind, t);
  const auto u2 = weights(F2, W, log_R, kind, t);

  if (route == SumRoute::kDiagonal) {
    require(k == 0, "maynard_lhs: the diagonal route is implemented for k = 0 only");
    const std::int64_t d_max = std::max(support_limit(F1, log_R), support_limit(F2, log_R));
    return lhs_diagonal(u1, u2, kind, t, d_max).to_double();
  }
  const double tuples = std::pow(static_cast<double>(u1.size()) * static_cast<double>(u2.size()),
                                 k + 1);
  if (tuples > budget)
    fail_validation("maynard_lhs: enumeration of ~" + std::to_string(tuples) +
                    " tuples exceeds the budget of " + std::to_string(budget) +
                    "; lower R or k");
  return lhs_direct(k, u1, u2, kind, t).to_double();
}

double maynard_rhs(int k, std::int64_t W, std::int64_t R, const TestFunction& F1,
                   const TestFunction& F2) {
  require(R >= 2, "maynard_rhs: R must be >= 2");
  const double ratio = static_cast<double>(W) / static_cast<double>(totient_trial(W));
  const double inner = F1.derivative_inner(F2) / std::log(static_cast<double>(R));
  return std::pow(ratio * inner, k + 1);
}

}  // namespace bgap
