#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "bgap/cli.hpp"
#include "bgap/cluster.hpp"
#include "bgap/error.hpp"
#include "bgap/expsum.hpp"
#include "bgap/sieve.hpp"

namespace bgap::cli {
namespace {

using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string summary;
  json detail = json::object();
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome(const RunConfig&)> body;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

SieveParams params(std::int64_t N, int k, std::int64_t w, std::int64_t W0,
                   std::optional<std::int64_t> R = std::nullopt) {
  SieveConfig s;
  s.N = N;
  s.k = k;
  s.w = w;
  s.W0 = W0;
  s.theta = 0.1;
  s.R = R;
  return make_params(s);
}

// --- 1 ---------------------------------------------------------------------

Outcome omega_oracle(const RunConfig& c) {
  constexpr int kSamples = 200;
  Outcome o;
  o.pass = true;
  int checked = 0;
  int nontrivial = 0;
  for (const std::optional<std::int64_t> R : {std::optional<std::int64_t>{}, std::optional<std::int64_t>{10000}}) {
    for (const int k : {1, 2}) {
      const SieveParams p = params(100000, k, 5, 1, R);
      const TestFunction F = TestFunction::linear_default(k);
      const PrimeTable t = build_prime_table(p.table_limit());
      std::mt19937_64 rng(c.seed + static_cast<std::uint64_t>(k));
      std::uniform_int_distribution<std::int64_t> pick(0, p.count() - 1);
      const double trivial = std::pow(F.f(0.0), k + 1);
      int equal = 0;
      for (int s = 0; s < kSamples; ++s) {
        const std::int64_t n = p.n_at(pick(rng));
        const double fast = omega_n(n, p, F, t, OmegaMode::kSeparable);
        const double brute = omega_n(n, p, F, t, OmegaMode::kEnumerate);
        equal += std::bit_cast<std::uint64_t>(fast) == std::bit_cast<std::uint64_t>(brute);
        nontrivial += omega_root(n, p, F, t) != trivial;
      }
      checked += kSamples;
      o.pass = o.pass && equal == kSamples;
      o.detail["runs"].push_back({{"k", k}, {"R", p.R}, {"bit_equal", equal}, {"samples", kSamples}});
    }
  }
  o.detail["nontrivial"] = nontrivial;
  o.summary = std::to_string(checked) + " samples over k=1,2 at R=floor(N^0.1) and R=10^4, " +
              std::to_string(nontrivial) + " with nontrivial divisor sums";
  return o;
}

// --- 2 ---------------------------------------------------------------------

Outcome identity_oracle(const RunConfig&) {
  Outcome o;
  o.pass = true;
  const std::int64_t W = compute_W(3, 1);
  const TestFunction F = TestFunction::linear_default(0);
  const PrimeTable t = build_prime_table(10001);
  std::string summary;
  for (const auto kind : {Denominator::kLcm, Denominator::kTotient}) {
    const char* name = kind == Denominator::kLcm ? "lcm" : "phi(lcm)";
    double prev_dist = INFINITY;
    double last = 0.0;
    bool exact = true;
    bool monotone = true;
    json rows = json::array();
    for (const std::int64_t R : {100, 1000, 10000}) {
      const double direct = maynard_lhs(0, W, R, F, F, kind, t, SumRoute::kDirect);
      const double diag = maynard_lhs(0, W, R, F, F, kind, t, SumRoute::kDiagonal);
      const double rhs = maynard_rhs(0, W, R, F, F);
      exact = exact && direct == diag;
      last = direct / rhs;
      const double dist = std::fabs(1.0 - last);
      monotone = monotone && dist < prev_dist;
      prev_dist = dist;
      rows.push_back({{"R", R}, {"lhs", real_json(direct)}, {"lhs_grouped", real_json(diag)},
                      {"rhs", real_json(rhs)}, {"ratio", real_json(last)}});
    }
    const bool ok = exact && monotone && last >= 0.7 && last <= 1.3;
    o.pass = o.pass && ok;
    o.detail[name] = {{"rows", rows}, {"exact", exact}, {"monotone", monotone}};
    summary += std::string(summary.empty() ? "" : "; ") + name + " final ratio " +
               fmt("%.4f", last) + (exact ? "" : " (routes differ)") +
               (monotone ? "" : " (not monotone)");
  }
  o.summary = summary;
  return o;
}

// --- 3 ---------------------------------------------------------------------

Outcome key_formulas(const RunConfig& c) {
  const Exec exec{c.threads};
  Outcome o;
  std::vector<double> dist_small, dist_large;
  bool in_band = true;
  for (const std::int64_t N : {1000000, 4000000}) {
    const SieveParams p = params(N, 2, 5, 1);
    const TestFunction F = TestFunction::linear_default(2);
    const PrimeTable t = build_prime_table(p.table_limit());
    std::vector<double> ratios;
    ratios.push_back(omega_sum(p, F, t, exec).ratio()->real());
    for (int i = 0; i <= 2; ++i) ratios.push_back(weighted_prime_sum(p, F, i, t, exec).ratio()->real());
    auto& dist = N == 1000000 ? dist_small : dist_large;
    for (const double r : ratios) {
      dist.push_back(std::fabs(1.0 - r));
      if (N == 1000000) in_band = in_band && r >= 0.5 && r <= 1.5;
    }
    json rs = json::array();
    for (const double r : ratios) rs.push_back(real_json(r));
    o.detail["runs"].push_back({{"N", N}, {"R", p.R}, {"ratios", rs}});
  }
  bool trend = true;
  for (std::size_t j = 0; j < dist_small.size(); ++j)
    trend = trend && (dist_large[j] < dist_small[j] || std::fabs(dist_large[j] - dist_small[j]) <= 0.05);
  o.pass = in_band && trend;
  o.detail["in_band"] = in_band;
  o.detail["trend"] = trend;
  const auto& r0 = o.detail["runs"][0]["ratios"];
  o.summary = "N=10^6 ratios omega " + fmt("%.4g", r0[0].get<double>()) + ", weighted " +
              fmt("%.4g", r0[1].get<double>()) + " (band [0.5, 1.5]" + (in_band ? " met" : " missed") +
              "), trend toward 1 " + (trend ? "holds" : "fails");
  return o;
}

// --- 4 ---------------------------------------------------------------------

Outcome weighted_consistency(const RunConfig& c) {
  const Exec exec{c.threads};
  Outcome o;
  const TestFunction F = TestFunction::linear_default(2);
  bool a_ok = true, b_ok = true, c_ok = true;
  double worst_rel = 0.0, worst_supp = 0.0;
  {
    const SieveParams p = params(1000000, 2, 5, 1);
    const PrimeTable t = build_prime_table(p.table_limit());
    for (int i = 0; i <= 2; ++i) {
      const auto e = weighted_expsum(p, F, i, make_point(1, 1), t, exec);
      const auto s = weighted_prime_sum(p, F, i, t, exec);
      const double rel = std::abs(e.measured - s.measured) / std::fabs(s.measured.real());
      worst_rel = std::max(worst_rel, rel);
      a_ok = a_ok && rel <= 1e-9;
      const auto h = weighted_expsum(p, F, i, make_point(1, 2), t, exec);
      const double sign = (p.b + p.tuple.h[static_cast<std::size_t>(i)]) % 2 == 0 ? 1.0 : -1.0;
      b_ok = b_ok && h.predicted.real() * sign > 0.0 && h.measured.real() * sign > 0.0;
      o.detail["q2"].push_back({{"i", i}, {"measured", complex_json(h.measured)},
                                {"predicted", complex_json(h.predicted)}});
    }
  }
  {
    const SieveParams p = params(1000000, 2, 7, 1);
    const PrimeTable t = build_prime_table(p.table_limit());
    for (const auto q : primes_up_to(49)) {
      if (q <= 7) continue;
      for (int i = 0; i <= 2; ++i) {
        const auto e = weighted_expsum(p, F, i, make_point(1, q), t, exec);
        const double supp = std::abs(e.measured) / e.extra["main_magnitude"].get<double>();
        worst_supp = std::max(worst_supp, supp);
        c_ok = c_ok && supp <= 0.5;
      }
    }
  }
  o.pass = a_ok && b_ok && c_ok;
  o.detail["relative_gap"] = real_json(worst_rel);
  o.detail["q2_sign"] = b_ok;
  o.detail["worst_suppression"] = real_json(worst_supp);
  o.summary = "q=1 vs weighted sum rel " + fmt("%.2e", worst_rel) + ", q=2 signs " +
              (b_ok ? "match" : "mismatch") + ", q in (7,50) worst |S|/main " + fmt("%.3f", worst_supp);
  return o;
}

// --- 5 ---------------------------------------------------------------------

Outcome progression_main(const RunConfig& c) {
  const Exec exec{c.threads};
  constexpr std::int64_t x = 1000000;
  const PrimeTable t = build_prime_table(2 * x);
  const double tol = 0.1 * static_cast<double>(x) / std::log(static_cast<double>(x));
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (const std::int64_t D : {3, 4, 5}) {
    for (const std::int64_t q : {1, 2, 3, 4, 5, 8}) {
      for (const std::int64_t b : {std::int64_t{1}, D - 1}) {
        if (b == D - 1 && D == 2) continue;
        for (std::int64_t a = 1; a <= q; ++a) {
          if (gcd64(a, q) != 1) continue;
          const RationalPoint pt = make_point(a, q);
          const auto s = prime_expsum(x, D, b, pt, t, exec);
          const auto m = progression_main_term(x, D, b, pt);
          worst = std::max(worst, std::abs(s - m));
          ++cases;
        }
      }
    }
  }
  bool zero_ok = true;
  double worst_zero = 0.0;
  for (const auto& [D, q] : {std::pair<std::int64_t, std::int64_t>{2, 4}, {2, 8}, {4, 8}}) {
    for (std::int64_t a = 1; a <= q; a += 2) {
      const RationalPoint pt = make_point(a, q);
      const auto m = progression_main_term(x, D, 1, pt);
      const auto s = prime_expsum(x, D, 1, pt, t, exec);
      zero_ok = zero_ok && m == std::complex<double>(0.0, 0.0);
      worst_zero = std::max(worst_zero, std::abs(s));
    }
  }
  zero_ok = zero_ok && worst_zero <= 0.05 * static_cast<double>(x);
  o.pass = worst <= tol && zero_ok;
  o.detail = {{"cases", cases}, {"worst_error", real_json(worst)}, {"tolerance", real_json(tol)},
              {"worst_zero_case", real_json(worst_zero)}, {"zero_cases_ok", zero_ok}};
  o.summary = std::to_string(cases) + " (D,q,a,b) cases, worst error " + fmt("%.1f", worst) +
              " <= " + fmt("%.1f", tol) + "; zero cases max |S| " + fmt("%.1f", worst_zero);
  return o;
}

// --- 6 ---------------------------------------------------------------------

struct Sample {
  std::int64_t gamma;
  std::vector<double> t;
};

bool member(const BoxSet& A, const Sample& x) {
  for (const auto& pc : A.pieces()) {
    if (pc.gamma != x.gamma) continue;
    bool in = true;
    for (std::size_t c = 0; c < x.t.size() && in; ++c) {
      double u = x.t[c] - pc.cube.corner[c];
      u -= std::floor(u);
      in = u < pc.cube.side;
    }
    if (in) return true;
  }
  return false;
}

Outcome correlations_exact(const RunConfig& c) {
  Outcome o;
  const double kappa = std::numbers::sqrt2 - 1.0;
  const auto circle = make_system(1, 0, {kappa});
  const BoxSet half(circle, {BoxPiece{0, Cube{{0.0}, 0.5}}});
  double worst_circle = 0.0;
  for (std::int64_t n = 1; n <= 1000; ++n) {
    const double closed = 0.5 - torus_norm(static_cast<double>(n) * kappa);
    worst_circle = std::max(worst_circle, std::fabs(correlation(circle, half, n) - closed));
  }
  const auto z4 = make_system(4, 1, {});
  const BoxSet zero(z4, {BoxPiece{0, Cube{{}, 1.0}}});
  bool cyclic = true;
  for (std::int64_t n = 0; n < 1000; ++n)
    cyclic = cyclic && correlation(z4, zero, n) == (n % 4 == 0 ? 0.25 : 0.0);

  constexpr int kSamples = 100000;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mc_ok = 0;
  double worst_sigma = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = static_cast<std::int64_t>(1 + rng() % 4);
    const int d = static_cast<int>(rng() % 4);
    std::vector<double> kap;
    for (int j = 0; j < d; ++j) kap.push_back(unit(rng));
    const auto sys = make_system(g, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g)), kap);
    BoxSet A;
    for (;;) {
      std::vector<BoxPiece> pieces;
      const int count = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < count; ++j) {
        BoxPiece bp;
        bp.gamma = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g));
        for (int cc = 0; cc < d; ++cc) bp.cube.corner.push_back(unit(rng));
        bp.cube.side = 0.1 + 0.6 * unit(rng);
        pieces.push_back(std::move(bp));
      }
      try {
        A = BoxSet(sys, std::move(pieces));
        break;
      } catch (const ValidationError&) {
      }
    }
    const auto n = static_cast<std::int64_t>(rng() % 1000000);
    const double exact = correlation(sys, A, n);
    int hits = 0;
    for (int s = 0; s < kSamples; ++s) {
      Sample x{static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g)), {}};
      for (int cc = 0; cc < d; ++cc) x.t.push_back(unit(rng));
      if (!member(A, x)) continue;
      Sample y{(x.gamma + n % g * sys.gamma0) % g, x.t};
      for (int cc = 0; cc < d; ++cc) {
        const double shift = static_cast<double>(n) * sys.kappa[static_cast<std::size_t>(cc)];
        y.t[static_cast<std::size_t>(cc)] += shift - std::floor(shift);
        y.t[static_cast<std::size_t>(cc)] -= std::floor(y.t[static_cast<std::size_t>(cc)]);
      }
      hits += member(A, y);
    }
    const double mc = static_cast<double>(hits) / kSamples;
    const double sigma = std::sqrt(exact * (1.0 - exact) / kSamples);
    const bool ok = std::fabs(mc - exact) <= 4.0 * sigma + 1e-12;
    mc_ok += ok;
    if (sigma > 0.0) worst_sigma = std::max(worst_sigma, std::fabs(mc - exact) / sigma);
    o.detail["monte_carlo"].push_back({{"g", g}, {"d", d}, {"n", n}, {"exact", real_json(exact)},
                                       {"mc", real_json(mc)}, {"ok", ok}});
  }
  o.pass = worst_circle <= 1e-12 && cyclic && mc_ok == 20;
  o.detail["circle_max_error"] = real_json(worst_circle);
  o.detail["cyclic"] = cyclic;
  o.summary = "circle max error " + fmt("%.2e", worst_circle) + ", Z/4 pattern " +
              (cyclic ? "exact" : "broken") + ", Monte Carlo " + std::to_string(mc_ok) +
              "/20 within 4 sigma (worst " + fmt("%.2f", worst_sigma) + " sigma)";
  return o;
}

// --- 7 ---------------------------------------------------------------------

std::int64_t max_gap(const std::vector<std::int64_t>& s) {
  std::int64_t g = 0;
  for (std::size_t j = 1; j < s.size(); ++j) g = std::max(g, s[j] - s[j - 1]);
  return g;
}

Outcome khintchine(const RunConfig&) {
  const auto sys = make_system(1, 0, {std::numbers::sqrt2 - 1.0});
  const BoxSet A(sys, {BoxPiece{0, Cube{{0.0}, 0.5}}});
  const auto g1 = max_gap(khintchine_set(sys, A, 0.01, 100000));
  const auto g2 = max_gap(khintchine_set(sys, A, 0.01, 200000));
  Outcome o;
  o.pass = g1 == g2 && g1 > 0;
  o.detail = {{"max_gap_1e5", g1}, {"max_gap_2e5", g2}};
  o.summary = "max gap " + std::to_string(g1) + " up to 10^5, " + std::to_string(g2) + " up to 2*10^5";
  return o;
}

// --- 8 ---------------------------------------------------------------------

Outcome lambda_structure(const RunConfig&) {
  const auto sys = make_system(4, 1, {});
  const BoxSet A(sys, {BoxPiece{0, Cube{{}, 1.0}}});
  const PrimeTable t = build_prime_table(10000);
  const auto got = shifted_prime_recurrence_set(sys, A, 0.01, 10000, t);
  std::vector<std::int64_t> want;
  for (const auto p : primes_up_to(10000))
    if (p % 4 == 1) want.push_back(p);
  Outcome o;
  o.pass = got == want;
  o.detail = {{"count", got.size()}, {"expected", want.size()}};
  o.summary = std::to_string(got.size()) + " primes, oracle " + std::to_string(want.size()) +
              (o.pass ? ", identical" : ", different");
  return o;
}

// --- 9 ---------------------------------------------------------------------

Outcome clusters(const RunConfig& c) {
  const Exec exec{c.threads};
  const auto sys = make_system(4, 1, {});
  const BoxSet A(sys, {BoxPiece{0, Cube{{}, 1.0}}});
  Outcome o;

  const SieveParams p = params(1000000, 5, 5, 4);
  const PrimeTable t = build_prime_table(p.table_limit());
  const auto found = scan_clusters(p, sys, A, 0.01, 1, t, exec);
  bool sound = true;
  for (const auto& r : found) {
    sound = sound && r.primes.size() >= 2 && r.width <= p.tuple.diameter() &&
            reverify(r, p, sys, A, 0.01, t);
    for (const auto q : r.primes) sound = sound && q % 4 == 1;
  }

  SieveConfig sc;
  sc.N = 1000000;
  sc.w = 13;
  sc.W0 = 4;
  sc.tuple = std::vector<std::int64_t>{0, 8, 12, 20, 24, 32};
  sc.consecutive = true;
  const SieveParams pc = make_params(sc);
  const PrimeTable tc = build_prime_table(pc.table_limit());
  const auto cons = consecutive_filter(scan_clusters(pc, sys, A, 0.01, 1, tc, exec), pc, tc);
  bool consecutive = !cons.empty();
  for (const auto& r : cons)
    consecutive = consecutive && r.consecutive && reverify(r, pc, sys, A, 0.01, tc);

  o.pass = found.size() >= 10 && sound && consecutive;
  o.detail = {{"clusters", found.size()},     {"diameter", p.tuple.diameter()},
              {"sound", sound},               {"consecutive_clusters", cons.size()},
              {"consecutive_ok", consecutive}, {"consecutive_W", pc.W},
              {"consecutive_b", pc.b}};
  o.summary = std::to_string(found.size()) + " clusters (h=" + std::to_string(p.tuple.h[1]) +
              "j), re-verified " + (sound ? "ok" : "FAILED") + "; consecutive run " +
              std::to_string(cons.size()) + " clusters, " + (consecutive ? "all consecutive" : "not all consecutive");
  return o;
}

// --- 10 --------------------------------------------------------------------

Outcome bump(const RunConfig&) {
  const BumpPsi psi = build_bump(0.1, 0.01, 10000);
  bool fitted = true;
  for (int j = 1; j <= 10000; ++j)
    fitted = fitted && std::abs(psi.alpha(j)) / psi.envelope(j) <= psi.C0;
  double worst_ext = 0.0;
  for (int j = 1; j <= 20000; ++j)
    worst_ext = std::max(worst_ext, std::abs(psi.alpha(j)) / psi.envelope(j) / psi.C0);
  Outcome o;
  bool recon = true;
  for (const int K : {100, 1000}) {
    double err = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const double x = s / 1000.0;
      err = std::max(err, std::fabs(psi.partial_sum(x, K) - psi.value(x)));
    }
    const double bound = 2.0 * psi.C0 / (psi.delta1 * K);
    recon = recon && err <= bound;
    o.detail["reconstruction"].push_back({{"K", K}, {"max_error", real_json(err)}, {"bound", real_json(bound)}});
  }
  const bool constant = psi.fourier[0] == std::complex<double>(0.1 - 0.01, 0.0);
  o.pass = fitted && worst_ext <= 1.05 && recon && constant;
  o.detail["C0"] = real_json(psi.C0);
  o.detail["extended_ratio"] = real_json(worst_ext);
  o.summary = "C0 " + fmt("%.4g", psi.C0) + ", |j|<=2*10^4 ratio " + fmt("%.4f", worst_ext) +
              ", reconstruction " + (recon ? "within" : "outside") + " 2C0/(delta1 K)";
  return o;
}

// --- 11 --------------------------------------------------------------------

Outcome determinism(const RunConfig& c) {
  const std::vector<std::vector<std::string>> runs = {
      {"sums", "--n", "200000", "--k", "2", "--w", "5"},
      {"expsum", "--n", "200000", "--a", "1", "--q", "3", "--theta-offset", "1e-7"},
      {"cluster", "--n", "200000", "--system", "g=4", "--set", "0", "--w0", "4", "--k", "5"},
      {"recur", "--system", "g=1;kappa=sqrt_primes 2", "--set", "0,0,0,0.5", "--nmax", "20000",
       "--pmax", "20000", "--correlation-sums", "--n", "100000", "--k", "1"},
      {"verify", "--only", "1,6,8,10", "--seed", std::to_string(c.seed)},
  };
  Outcome o;
  o.pass = true;
  int identical = 0;
  for (const auto& base : runs) {
    std::string first;
    bool same = true;
    for (const char* threads : {"1", "2", "7"}) {
      auto args = base;
      args.push_back("--threads");
      args.push_back(threads);
      std::ostringstream out, err;
      const int code = run(args, out, err);
      same = same && code == 0;
      if (first.empty()) first = out.str();
      same = same && out.str() == first && !first.empty();
    }
    identical += same;
    o.pass = o.pass && same;
    o.detail["runs"].push_back({{"command", base.front()}, {"identical", same}});
  }
  o.summary = std::to_string(identical) + "/" + std::to_string(runs.size()) +
              " commands byte-identical at 1, 2 and 7 threads";
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "Omega separable vs enumeration", 30, omega_oracle},
      {2, "sieve-weight identity oracle", 120, identity_oracle},
      {3, "key formula ratios", 300, key_formulas},
      {4, "weighted expsum consistency", 300, weighted_consistency},
      {5, "progression expsum main term", 180, progression_main},
      {6, "exact correlations", 60, correlations_exact},
      {7, "Khintchine gap stabilization", 60, khintchine},
      {8, "Lambda structure for Z/4", 60, lambda_structure},
      {9, "cluster extraction", 300, clusters},
      {10, "bump Fourier envelope", 60, bump},
      {11, "determinism across thread counts", 300, determinism},
  };
  return all;
}

}  // namespace

int verify(const RunConfig& c, std::ostream& out, std::ostream& table) {
  int failed = 0;
  for (const auto& cr : criteria()) {
    if (!c.only.empty() && std::find(c.only.begin(), c.only.end(), cr.id) == c.only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.body(c);
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("raised: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= cr.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;

    json j{{"op", "acceptance"}, {"criterion", cr.id}, {"title", cr.title},
           {"pass", pass},       {"detail", o.detail}};
    if (c.timing) j["wall_s"] = secs;
    out << j.dump() << '\n';

    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s  %-34s", cr.id, pass ? "PASS" : "FAIL", cr.title);
    table << head << o.summary << " [" << fmt("%.1f", secs) << " s / " << fmt("%.0f", cr.budget_s)
          << " s" << (in_time ? "" : ", over budget") << "]\n";
  }
  out.flush();
  table.flush();
  return failed;
}

}  // namespace bgap::cli
