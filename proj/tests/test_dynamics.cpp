#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bgap/dynamics.hpp"
#include "bgap/error.hpp"
#include "bgap/sieve.hpp"
#include "oracles.hpp"

using namespace bgap;

namespace {

// Length of [a, a + la) cap [b, b + lb) on R/Z, summing the three lifts of b.
long double arc_overlap(long double a, long double la, long double b, long double lb) {
  long double s = 0;
  for (int k = -1; k <= 1; ++k) {
    const long double lo = std::max(a, b + k), hi = std::min(a + la, b + k + lb);
    if (hi > lo) s += hi - lo;
  }
  return s;
}

long double correlation_oracle(const KroneckerSystem& sys, const std::vector<BoxPiece>& pcs,
                               std::int64_t n) {
  long double total = 0;
  for (const auto& pi : pcs)
    for (const auto& pj : pcs) {
      if (((pi.gamma + n % sys.g * sys.gamma0) % sys.g + sys.g) % sys.g != pj.gamma) continue;
      long double prod = 1;
      for (int c = 0; c < sys.d(); ++c) {
        long double shift = static_cast<long double>(n) * sys.kappa[static_cast<std::size_t>(c)];
        shift -= std::floor(shift);
        // x in cube i and x + n kappa in cube j: x in cube j shifted by -n kappa.
        long double b = pj.cube.corner[static_cast<std::size_t>(c)] - shift;
        b -= std::floor(b);
        prod *= arc_overlap(pi.cube.corner[static_cast<std::size_t>(c)], pi.cube.side, b, pj.cube.side);
      }
      total += prod;
    }
  return total / sys.g;
}

BoxSet random_set(const KroneckerSystem& sys, std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<BoxPiece> pcs;
  // Pieces in distinct group elements or disjoint first coordinates.
  const double side = 0.9 / pieces;
  for (int j = 0; j < pieces; ++j) {
    BoxPiece pc;
    pc.gamma = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(sys.g));
    pc.cube.side = side * (0.3 + 0.7 * U(rng));
    pc.cube.corner.push_back(side * j);
    for (int c = 1; c < sys.d(); ++c) pc.cube.corner.push_back(U(rng));
    pcs.push_back(pc);
  }
  return BoxSet(sys, pcs);
}

}  // namespace

TEST(Torus, Norm) {
  EXPECT_EQ(torus_norm(0.25), 0.25);
  EXPECT_EQ(torus_norm(0.75), 0.25);
  EXPECT_NEAR(torus_norm(-2.1), 0.1, 1e-15);
  EXPECT_NEAR(torus_norm(0.9), torus_norm(-0.9), 0.0);
  EXPECT_EQ(torus_norm(3.0), 0.0);
}

TEST(Torus, SqrtPrimes) {
  const auto k = sqrt_primes(3);
  ASSERT_EQ(k.size(), 3u);
  EXPECT_EQ(k[0], std::sqrt(2.0) - 1.0);
  EXPECT_EQ(k[2], std::sqrt(5.0) - 2.0);
}

TEST(BoxSetTest, ValidatesAndMeasures) {
  const auto sys = make_system(2, 1, {0.3, 0.7});
  const BoxSet A(sys, {{0, Cube{{0.0, 0.5}, 0.5}}, {1, Cube{{0.1, 0.1}, 0.2}}});
  EXPECT_DOUBLE_EQ(A.measure(), (0.25 + 0.04) / 2.0);
  EXPECT_EQ(BoxSet::whole(sys).measure(), 1.0);
  EXPECT_EQ(BoxSet::empty().measure(), 0.0);
  EXPECT_THROW(BoxSet(sys, {{2, Cube{{0.0, 0.0}, 0.5}}}), ValidationError);
  EXPECT_THROW(BoxSet(sys, {{0, Cube{{0.0}, 0.5}}}), ValidationError);
  EXPECT_THROW(BoxSet(sys, {{0, Cube{{0.0, 0.0}, 0.5}}, {0, Cube{{0.9, 0.4}, 0.2}}}), ValidationError);
  EXPECT_NO_THROW(BoxSet(sys, {{0, Cube{{0.0, 0.0}, 0.5}}, {0, Cube{{0.5, 0.4}, 0.2}}}));
}

TEST(Correlation, Examples) {
  const auto sys = make_system(1, 0, {0.25});
  const BoxSet A(sys, {{0, Cube{{0.0}, 0.5}}});
  EXPECT_EQ(correlation(sys, A, 0), 0.5);
  EXPECT_EQ(correlation(sys, A, 1), 0.25);
  EXPECT_EQ(correlation(sys, A, 2), 0.0);
  EXPECT_EQ(correlation(sys, A, -1), 0.25);

  const auto z4 = make_system(4, 1, {});
  const BoxSet B(z4, {{0, Cube{{}, 1.0}}});
  EXPECT_EQ(B.measure(), 0.25);
  for (std::int64_t n = -8; n <= 8; ++n) EXPECT_EQ(correlation(z4, B, n), n % 4 == 0 ? 0.25 : 0.0);
}

TEST(Correlation, MatchesOracleAndSymmetric) {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 40; ++s) {
    const int d = 1 + s % 3;
    const std::int64_t g = 1 + s % 4;
    const auto sys = make_system(g, g > 1 ? 1 : 0, sqrt_primes(d));
    const auto A = random_set(sys, rng, 1 + s % 3);
    for (int r = 0; r < 30; ++r) {
      const std::int64_t n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
      const double c = correlation(sys, A, n);
      ASSERT_NEAR(c, static_cast<double>(correlation_oracle(sys, A.pieces(), n)), 1e-12) << s << ' ' << n;
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, A.measure() + 1e-15);
      ASSERT_NEAR(c, correlation(sys, A, -n), 1e-12);
    }
    EXPECT_NEAR(correlation(sys, A, 0), A.measure(), 1e-15);
  }
}

TEST(Correlation, MonteCarlo) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto sys = make_system(3, 2, sqrt_primes(2));
  const auto A = random_set(sys, rng, 2);
  constexpr int kSamples = 200000;
  auto inside = [&](std::int64_t gamma, const std::vector<double>& x) {
    for (const auto& pc : A.pieces()) {
      if (pc.gamma != gamma) continue;
      bool in = true;
      for (std::size_t c = 0; c < x.size(); ++c) {
        double off = x[c] - pc.cube.corner[c];
        off -= std::floor(off);
        in = in && off < pc.cube.side;
      }
      if (in) return true;
    }
    return false;
  };
  for (const std::int64_t n : {1, 7, 1000}) {
    int hits = 0;
    for (int s = 0; s < kSamples; ++s) {
      const auto gamma = static_cast<std::int64_t>(rng() % 3);
      std::vector<double> x{U(rng), U(rng)};
      if (!inside(gamma, x)) continue;
      std::vector<double> y(x);
      for (std::size_t c = 0; c < 2; ++c) {
        y[c] += static_cast<double>(static_cast<long double>(n) * sys.kappa[c] -
                                    std::floor(static_cast<long double>(n) * sys.kappa[c]));
        y[c] -= std::floor(y[c]);
      }
      hits += inside((gamma + n * sys.gamma0) % 3, y);
    }
    const double p = correlation(sys, A, n);
    const double sigma = std::sqrt(p * (1 - p) / kSamples);
    EXPECT_NEAR(static_cast<double>(hits) / kSamples, p, 4 * sigma + 1e-12) << n;
  }
}

TEST(Correlation, BatchedEqualsSingle) {
  const auto sys = make_system(2, 1, sqrt_primes(2));
  const BoxSet A(sys, {{0, Cube{{0.1, 0.2}, 0.4}}, {1, Cube{{0.5, 0.0}, 0.3}}});
  std::vector<std::int64_t> n;
  for (std::int64_t v = -500; v <= 3000; v += 7) n.push_back(v);
  std::vector<double> out(n.size());
  correlations(sys, A, n, out);
  for (std::size_t j = 0; j < n.size(); ++j) ASSERT_EQ(out[j], correlation(sys, A, n[j]));
  const std::int64_t big[] = {std::int64_t{1} << 52};
  double o[1];
  EXPECT_THROW(correlations(sys, A, big, o), ValidationError);
}

TEST(Khintchine, Examples) {
  const auto z4 = make_system(4, 1, {});
  const BoxSet B(z4, {{0, Cube{{}, 1.0}}});
  const auto ks = khintchine_set(z4, B, 0.01, 40);
  std::vector<std::int64_t> want;
  for (std::int64_t n = 0; n <= 40; n += 4) want.push_back(n);
  EXPECT_EQ(ks, want);

  const auto t = build_prime_table(1000);
  const auto lam = shifted_prime_recurrence_set(z4, B, 0.01, 1000, t);
  std::vector<std::int64_t> p1mod4;
  for (std::int64_t p = 2; p <= 1000; ++p)
    if (oracle::is_prime(p) && p % 4 == 1) p1mod4.push_back(p);
  EXPECT_EQ(lam, p1mod4);

  const auto sys = make_system(1, 0, sqrt_primes(1));
  EXPECT_EQ(khintchine_set(sys, BoxSet::whole(sys), 0.1, 99).size(), 100u);
  EXPECT_THROW(khintchine_set(sys, BoxSet::whole(sys), 0.0, 99), ValidationError);
}

TEST(Khintchine, SetMatchesThreshold) {
  const auto sys = make_system(2, 1, sqrt_primes(2));
  const BoxSet A(sys, {{0, Cube{{0.1, 0.2}, 0.6}}, {1, Cube{{0.5, 0.0}, 0.4}}});
  const double thr = A.measure() * A.measure() - 0.02;
  const auto ks = khintchine_set(sys, A, 0.02, 3000);
  std::size_t j = 0;
  for (std::int64_t n = 0; n <= 3000; ++n) {
    const bool in = j < ks.size() && ks[j] == n;
    ASSERT_EQ(in, correlation(sys, A, n) >= thr) << n;
    j += in;
  }
}

TEST(Khintchine, CesaroMeanIsMeasureSquared) {
  const auto sys = make_system(1, 0, sqrt_primes(2));
  const BoxSet A(sys, {{0, Cube{{0.2, 0.6}, 0.3}}});
  double s = 0;
  constexpr int kM = 20000;
  for (std::int64_t n = 1; n <= kM; ++n) s += correlation(sys, A, n);
  const double mu2 = A.measure() * A.measure();
  EXPECT_NEAR(s / kM / mu2, 1.0, 0.05);
}

TEST(Bump, ShapeAndCoefficients) {
  const auto psi = build_bump(0.2, 0.05, 2000);
  EXPECT_EQ(psi.K(), 2000);
  EXPECT_DOUBLE_EQ(psi.alpha(0).real(), 0.15);
  EXPECT_EQ(psi.alpha(0).imag(), 0.0);
  EXPECT_EQ(psi.value(0.1), 1.0);
  EXPECT_EQ(psi.value(0.15), 1.0);
  EXPECT_EQ(psi.value(0.5), 0.0);
  EXPECT_DOUBLE_EQ(psi.value(0.025), 0.5);
  EXPECT_DOUBLE_EQ(psi.value(0.175), 0.5);
  for (const int j : {1, 2, 3, 7, 20, 101}) {
    const double two_pi = 2 * std::numbers::pi;
    double re = 0, im = 0;
    for (const auto& [lo, hi] : std::vector<std::pair<double, double>>{{0, 0.05}, {0.05, 0.15}, {0.15, 0.2}}) {
      re += oracle::simpson([&](double x) { return psi.value(x) * std::cos(two_pi * j * x); }, lo, hi, 1e-15);
      im -= oracle::simpson([&](double x) { return psi.value(x) * std::sin(two_pi * j * x); }, lo, hi, 1e-15);
    }
    EXPECT_NEAR(psi.alpha(j).real(), re, 1e-12) << j;
    EXPECT_NEAR(psi.alpha(j).imag(), im, 1e-12) << j;
    EXPECT_EQ(psi.alpha(-j), std::conj(psi.alpha(j)));
  }
}

TEST(Bump, EnvelopeAndConstant) {
  const auto psi = build_bump(0.2, 0.05, 2000);
  EXPECT_GT(psi.C0, 0.0);
  EXPECT_LE(psi.C0, 1.0);
  for (std::int64_t j = 1; j <= 20000; ++j) {
    ASSERT_LE(std::abs(psi.alpha(j)), psi.envelope(j) * 1.0000001) << j;
    if (j <= 2000) { ASSERT_LE(std::abs(psi.alpha(j)), psi.C0 * psi.envelope(j) * (1 + 1e-12)) << j; }
  }
}

TEST(Bump, PartialSumsConverge) {
  const auto psi = build_bump(0.2, 0.05);
  for (const double x : {0.0, 0.01, 0.1, 0.18, 0.3, 0.9})
    EXPECT_NEAR(psi.partial_sum(x, psi.K()), psi.value(x), 1e-3) << x;
}

TEST(Bump, Rejections) {
  EXPECT_THROW(build_bump(0.2, 0.1), ValidationError);
  EXPECT_THROW(build_bump(1.2, 0.1), ValidationError);
  EXPECT_THROW(build_bump(0.2, 0.0), ValidationError);
  EXPECT_THROW(build_bump(0.2, 0.05, 0), ValidationError);
}

TEST(CubePair, L0) {
  EXPECT_EQ(cube_pair_L0(1, 0.01, 1.0), 299);
  for (const int d : {1, 2, 3})
    for (const double eps : {0.001, 0.01, 0.1}) {
      const auto L = cube_pair_L0(d, eps, 0.5);
      const double rhs = std::cbrt(1.0 - eps / 0.25);
      ASSERT_GT(std::pow(1.0 - 1.0 / L, d), rhs);
      if (L > 2) { ASSERT_LE(std::pow(1.0 - 1.0 / (L - 1), d), rhs); }
    }
  EXPECT_THROW(cube_pair_L0(1, 2.0, 1.0), ValidationError);
}

TEST(CubePair, K0IsLeastOrCapped) {
  const auto psi = build_bump(0.1, 0.01, 200);
  const auto capped = cube_pair_K0(2, 0.1, 0.01, psi.C0, 10, 100);
  EXPECT_TRUE(capped.capped);
  EXPECT_EQ(capped.K0, 100);
  const auto k = cube_pair_K0(1, 0.1, 0.01, psi.C0, 10, 100000000);
  ASSERT_FALSE(k.capped);
  const double rhs = 0.09 * 0.01 / (2 * psi.C0) * 0.1;
  auto lhs = [](double K) { return 1.0 / K; };  // d = 1: the log factor has exponent 0
  EXPECT_LT(lhs(static_cast<double>(k.K0)), rhs);
  EXPECT_GE(lhs(static_cast<double>(k.K0 - 1)), rhs);
}

namespace {

SieveParams small_params(std::int64_t W0, std::int64_t R) {
  SieveConfig c;
  c.N = 100000;
  c.W0 = W0;
  c.R = R;
  return make_params(c);
}

}  // namespace

TEST(WeightedCorrelation, WholeAndEmptySets) {
  const auto p = small_params(1, 100);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto sys = make_system(1, 0, sqrt_primes(2));
  const auto ws = weighted_prime_sum(p, F, 1, t);
  const auto whole = weighted_correlation_sum(p, F, sys, BoxSet::whole(sys), 1, 0.01, t);
  EXPECT_EQ(whole.measured, ws.measured);
  EXPECT_NEAR(whole.predicted.real(), 0.99 * ws.predicted.real(), 1e-9 * ws.predicted.real());
  const auto none = weighted_correlation_sum(p, F, sys, BoxSet::empty(), 1, 0.01, t);
  EXPECT_EQ(none.measured.real(), 0.0);
  EXPECT_LT(none.predicted.real(), 0.0);
}

TEST(WeightedCorrelation, CyclicGroupQuartersTheSum) {
  const auto p = small_params(4, 1000);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto z4 = make_system(4, 1, {});
  const BoxSet B(z4, {{0, Cube{{}, 1.0}}});
  const auto r = weighted_correlation_sum(p, F, z4, B, 0, 0.01, t);
  // n + h_0 - 1 = 0 (mod 4), so every correlation is 1/4 exactly.
  EXPECT_EQ(r.measured.real(), 0.25 * weighted_prime_sum(p, F, 0, t).measured.real());
  EXPECT_GE(r.measured.real(), r.predicted.real());
  EXPECT_THROW(weighted_correlation_sum(small_params(1, 100), F, z4, B, 0, 0.01, t), ValidationError);
}

TEST(WeightedCorrelation, MatchesDirectLoop) {
  const auto p = small_params(1, 100);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto sys = make_system(1, 0, sqrt_primes(1));
  const BoxSet A(sys, {{0, Cube{{0.3}, 0.4}}});
  const auto f = [](long double x) { return x >= 0 && x < 1.0L / 3 ? 1.0L / 3 - x : 0.0L; };
  long double want = 0;
  for (std::int64_t n = p.first_n(); n <= 2 * p.N; n += p.W) {
    const auto m = n + p.tuple.h[2];
    if (!oracle::is_prime(m)) continue;
    const long double r = oracle::omega_root(n, p.tuple.h, 100.0, f);
    want += std::log(static_cast<long double>(m)) * r * r * correlation_oracle(sys, A.pieces(), m - 1);
  }
  const auto got = weighted_correlation_sum(p, F, sys, A, 2, 0.01, t);
  EXPECT_NEAR(got.measured.real() / static_cast<double>(want), 1.0, 1e-10);
}

TEST(CubePair, SumFields) {
  const auto p = small_params(1, 100);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto sys = make_system(1, 0, sqrt_primes(1));
  CubePairSpec spec;
  spec.a = {0};
  spec.b = {1};
  const auto r = cube_pair_sum(p, F, sys, spec, t);
  EXPECT_EQ(r.op, "cube_pair_sum");
  EXPECT_EQ(r.extra["L0"], cube_pair_L0(1, 0.01, 0.5));
  EXPECT_GT(r.measured.real(), 0.0);
  EXPECT_LE(r.measured.real(), 0.5 * weighted_prime_sum(p, F, 0, t).measured.real());
  EXPECT_TRUE(r.extra.contains("K0"));
  spec.b = {2};
  EXPECT_THROW(cube_pair_sum(p, F, sys, spec, t), ValidationError);
}
