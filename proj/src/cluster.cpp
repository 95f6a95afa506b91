#include "bgap/cluster.hpp"

#include <cmath>
#include <set>
#include <string>

#include "bgap/error.hpp"
#include "bgap/exact.hpp"

namespace bgap {
namespace {

struct SumAcc {
  ExactSum s;
  void merge(const SumAcc& o) { s.merge(o.s); }
};

struct ClusterAcc {
  std::vector<ClusterReport> items;
  void merge(ClusterAcc& o) {
    for (auto& r : o.items) items.push_back(std::move(r));
  }
};

void require_group_divides(const SieveParams& p, const KroneckerSystem& sys) {
  if (p.W0 % sys.g != 0)
    fail_validation("W0=" + std::to_string(p.W0) + " is not divisible by |G|=" +
                    std::to_string(sys.g) + " (the group order must divide W0)");
}

// Correlations at n + h_i - 1 for every i.
void window_correlations(std::int64_t n, const SieveParams& p, const KroneckerSystem& sys,
                         const BoxSet& A, std::vector<std::int64_t>& shifts,
                         std::vector<double>& corr) {
  const auto& h = p.tuple.h;
  shifts.resize(h.size());
  corr.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) shifts[i] = n + h[i] - 1;
  correlations(sys, A, shifts, corr);
}

}  // namespace

SumReport detector_sum(const SieveParams& p, const TestFunction& F, const KroneckerSystem& sys,
                       const BoxSet& A, double eps, int m, const PrimeTable& t,
                       const Exec& exec) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  require(m >= 1, "detector_sum: m must be >= 1");
  require_group_divides(p, sys);
  check_table(p, t);
  require(p.count() > 0, "detector_sum: empty progression");
  const double thr = A.measure() * A.measure() - eps;
  const double cap = m * std::log(3.0 * static_cast<double>(p.N));
  const auto& h = p.tuple.h;
  const SumAcc acc = parallel_reduce<SumAcc>(
      p.count(), exec, [&](std::int64_t lo, std::int64_t hi, SumAcc& out) {
        std::vector<std::int64_t> shifts;
        std::vector<double> corr;
        for (std::int64_t idx = lo; idx < hi; ++idx) {
          const std::int64_t n = p.n_at(idx);
          const double r = omega_root(n, p, F, t);
          const double om = r * r;
          if (om == 0.0) continue;
          window_correlations(n, p, sys, A, shifts, corr);
          for (std::size_t i = 0; i < h.size(); ++i) {
            if (!t.is_prime_unchecked(n + h[i])) continue;
            const double vp = std::log(static_cast<double>(n + h[i]));
            out.s.add_product(om, vp, corr[i]);
            out.s.add_product(-om, vp, thr);
          }
          out.s.add_product(-om, cap);
        }
      });
  SumReport r;
  r.op = "detector_sum";
  r.measured = acc.s.value();
  r.predicted = 0.0;
  r.count = p.count();
  r.params = params_json(p, F);
  r.extra["eps"] = real_json(eps);
  r.extra["m"] = m;
  r.extra["measure"] = real_json(A.measure());
  r.extra["positive"] = acc.s.exact().sign() > 0;
  return r;
}

std::vector<ClusterReport> scan_clusters(const SieveParams& p, const KroneckerSystem& sys,
                                         const BoxSet& A, double eps, int m,
                                         const PrimeTable& t, const Exec& exec) {
  require(m >= 1, "scan_clusters: m must be >= 1");
  require_group_divides(p, sys);
  check_table(p, t);
  const double thr = A.measure() * A.measure() - eps;
  const auto& h = p.tuple.h;
  ClusterAcc acc = parallel_reduce<ClusterAcc>(
      p.count(), exec, [&](std::int64_t lo, std::int64_t hi, ClusterAcc& out) {
        std::vector<std::int64_t> shifts;
        std::vector<double> corr;
        for (std::int64_t idx = lo; idx < hi; ++idx) {
          const std::int64_t n = p.n_at(idx);
          int primes_here = 0;
          for (const auto x : h) primes_here += t.is_prime_unchecked(n + x);
          if (primes_here < m + 1) continue;
          window_correlations(n, p, sys, A, shifts, corr);
          ClusterReport r;
          r.n = n;
          for (std::size_t i = 0; i < h.size(); ++i) {
            if (t.is_prime_unchecked(n + h[i]) && corr[i] >= thr) {
              r.hit_indices.push_back(static_cast<int>(i));
              r.primes.push_back(n + h[i]);
            }
          }
          if (static_cast<int>(r.hit_indices.size()) < m + 1) continue;
          r.width = r.primes.back() - r.primes.front();
          out.items.push_back(std::move(r));
        }
      });
  return std::move(acc.items);
}

std::vector<ClusterReport> consecutive_filter(std::vector<ClusterReport> reports,
                                              const SieveParams& p, const PrimeTable& t) {
  for (auto& r : reports) {
    if (p.consecutive) {
      for (const auto& g : p.gaps) {
        if (t.is_prime(r.n + g.a))
          throw InvariantError("consecutive: n + a = " + std::to_string(r.n + g.a) +
                               " is prime although rho=" + std::to_string(g.rho) +
                               " should divide it (b-selection bug)");
      }
    }
    const std::set<std::int64_t> listed(r.primes.begin(), r.primes.end());
    bool ok = true;
    for (std::int64_t x = r.primes.front() + 1; x < r.primes.back() && ok; ++x)
      ok = !(t.is_prime(x) && !listed.count(x));
    r.consecutive_checked = true;
    r.consecutive = ok;
  }
  return reports;
}

bool reverify(const ClusterReport& r, const SieveParams& p, const KroneckerSystem& sys,
              const BoxSet& A, double eps, const PrimeTable& t) {
  const double thr = A.measure() * A.measure() - eps;
  if (r.primes.size() != r.hit_indices.size() || r.primes.empty()) return false;
  for (std::size_t j = 0; j < r.primes.size(); ++j) {
    const auto i = static_cast<std::size_t>(r.hit_indices[j]);
    if (i >= p.tuple.h.size() || r.primes[j] != r.n + p.tuple.h[i]) return false;
    if (!t.is_prime(r.primes[j])) return false;
    if (correlation(sys, A, r.primes[j] - 1) < thr) return false;
  }
  return r.width == r.primes.back() - r.primes.front() && r.width <= p.tuple.diameter();
}

nlohmann::json to_json(const ClusterReport& r) {
  nlohmann::json j;
  j["op"] = "cluster";
  j["n"] = r.n;
  j["hits"] = r.hit_indices;
  j["primes"] = r.primes;
  j["width"] = r.width;
  if (r.consecutive_checked) j["consecutive"] = r.consecutive;
  return j;
}

}  // namespace bgap
