#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "bgap/error.hpp"
#include "bgap/sieve.hpp"
#include "oracles.hpp"

using namespace bgap;

namespace {

SieveParams params(std::int64_t N, int k, std::optional<std::int64_t> R = std::nullopt,
                   std::int64_t w = 5) {
  SieveConfig c;
  c.N = N;
  c.k = k;
  c.w = w;
  c.R = R;
  return make_params(c);
}

std::function<long double(long double)> linear(int k) {
  const long double T = 1.0L / (k + 1);
  return [T](long double t) { return t >= 0 && t < T ? T - t : 0.0L; };
}

}  // namespace

TEST(Omega, AllPrimeAboveSupport) {
  const auto p = params(100000, 2, 1000);  // R^T = 10
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  // 11, 17, 23 are prime and exceed R^T, so only d = (1, 1, 1) contributes.
  EXPECT_DOUBLE_EQ(omega_n(11, p, F, t), std::pow(1.0 / 3.0, 6));
}

TEST(Omega, SinglePrimeBelowR) {
  SieveConfig c;
  c.k = 0;
  c.R = 1000;
  const auto p = make_params(c);
  const auto F = TestFunction::linear_default(0);
  const auto t = build_prime_table(p.table_limit());
  for (const std::int64_t q : {2, 3, 97, 997}) {
    const double r = std::log(static_cast<double>(q)) / std::log(1000.0);
    EXPECT_NEAR(omega_n(q, p, F, t), r * r, 1e-15) << q;
  }
}

TEST(Omega, SeparableEqualsEnumerationBitwise) {
  for (const int k : {1, 2}) {
    for (const std::int64_t R : {3, 100, 10000}) {
      const auto p = params(100000, k, R);
      const auto F = TestFunction::linear_default(k);
      const auto t = build_prime_table(p.table_limit());
      std::mt19937_64 rng(7 + k);
      for (int s = 0; s < 200; ++s) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 200000);
        const double a = omega_n(n, p, F, t, OmegaMode::kSeparable);
        const double b = omega_n(n, p, F, t, OmegaMode::kEnumerate);
        ASSERT_EQ(std::bit_cast<std::uint64_t>(a), std::bit_cast<std::uint64_t>(b)) << n;
        ASSERT_GE(a, 0.0);
      }
    }
  }
}

TEST(Omega, MatchesDefinitionInLongDouble) {
  for (const int k : {1, 2}) {
    const auto p = params(100000, k, 10000);
    const auto F = TestFunction::linear_default(k);
    const auto t = build_prime_table(p.table_limit());
    for (std::int64_t n = 1; n < 3000; n += 13) {
      const long double root = oracle::omega_root(n, p.tuple.h, 10000.0, linear(k));
      EXPECT_NEAR(omega_root(n, p, F, t), static_cast<double>(root), 1e-15) << n;
    }
  }
}

TEST(Omega, TableTooSmall) {
  const auto p = params(100000, 2);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(1000);
  EXPECT_THROW(omega_n(995, p, F, t), ValidationError);
  EXPECT_THROW(omega_sum(p, F, t), ValidationError);
}

TEST(KeySums, AdditiveOverSubranges) {
  const auto p = params(200000, 2, 10000);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto n = p.count();
  for (const std::int64_t cut : {std::int64_t{1}, n / 3, n - 1}) {
    Dyadic whole = omega_sum_range(p, F, t, 0, n).exact();
    Dyadic parts = omega_sum_range(p, F, t, 0, cut).exact();
    parts += omega_sum_range(p, F, t, cut, n).exact();
    EXPECT_TRUE(whole == parts);
    Dyadic w1 = weighted_prime_sum_range(p, F, 1, t, 0, n).exact();
    Dyadic w2 = weighted_prime_sum_range(p, F, 1, t, 0, cut).exact();
    w2 += weighted_prime_sum_range(p, F, 1, t, cut, n).exact();
    EXPECT_TRUE(w1 == w2);
  }
}

TEST(KeySums, ThreadCountDoesNotChangeResults) {
  const auto p = params(300000, 2, 1000);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto ref = omega_sum(p, F, t, Exec{1});
  const auto refw = weighted_prime_sum(p, F, 2, t, Exec{1});
  for (const unsigned th : {2u, 3u, 8u}) {
    EXPECT_EQ(omega_sum(p, F, t, Exec{th}).measured, ref.measured);
    EXPECT_EQ(weighted_prime_sum(p, F, 2, t, Exec{th}).measured, refw.measured);
  }
}

TEST(KeySums, WeightedSumMatchesDirectLoop) {
  const auto p = params(50000, 1, 500);
  const auto F = TestFunction::linear_default(1);
  const auto t = build_prime_table(p.table_limit());
  for (int i = 0; i <= 1; ++i) {
    long double want = 0;
    for (std::int64_t n = p.N; n <= 2 * p.N; ++n) {
      if (n % p.W != p.b % p.W) continue;
      const auto m = n + p.tuple.h[static_cast<std::size_t>(i)];
      if (!oracle::is_prime(m)) continue;
      const long double r = oracle::omega_root(n, p.tuple.h, 500.0, linear(1));
      want += std::log(static_cast<long double>(m)) * r * r;
    }
    const auto got = weighted_prime_sum(p, F, i, t);
    EXPECT_NEAR(got.measured.real() / static_cast<double>(want), 1.0, 1e-12);
    EXPECT_GT(got.predicted.real(), 0.0);
  }
}

TEST(KeySums, PredictionsFollowTheClosedForm) {
  const auto p = params(1000000, 2);
  const auto F = TestFunction::linear_default(2);
  const double scale = 1e6 * 30.0 * 30.0 / (8.0 * 8.0 * 8.0);
  const double L = std::log(3.0);
  EXPECT_NEAR(main_scale(p) / scale, 1.0, 1e-15);
  EXPECT_NEAR(predicted_omega_sum(p, F) / (scale / 27.0 / (L * L * L)), 1.0, 1e-14);
  EXPECT_NEAR(predicted_weighted_sum(p, F, 0) / (scale / 81.0 / (L * L)), 1.0, 1e-14);
}

TEST(KeySums, MeasuredScalesWithN) {
  const auto F = TestFunction::linear_default(2);
  const auto p1 = params(200000, 2, 100);
  const auto p2 = params(400000, 2, 100);
  const auto t = build_prime_table(p2.table_limit());
  const double r = omega_sum(p2, F, t).measured.real() / omega_sum(p1, F, t).measured.real();
  EXPECT_GT(r, 1.6);
  EXPECT_LT(r, 2.4);
}

TEST(KeySums, ReportFields) {
  const auto p = params(100000, 2);
  const auto F = TestFunction::linear_default(2);
  const auto t = build_prime_table(p.table_limit());
  const auto r = omega_sum(p, F, t);
  EXPECT_EQ(r.count, p.count());
  EXPECT_GT(r.measured.real(), 0.0);
  const auto j = to_json(r);
  EXPECT_EQ(j["op"], "omega_sum");
  EXPECT_EQ(j["params"]["W"], 30);
  EXPECT_TRUE(j["ratio"].is_number());
}

namespace {

// The k = 0 double sum straight from the definition.
long double identity_k0(std::int64_t W, std::int64_t R, bool totient) {
  long double s = 0;
  const long double L = std::log(static_cast<long double>(R));
  const auto f = [&](std::int64_t d) { return 1.0L - std::log(static_cast<long double>(d)) / L; };
  for (std::int64_t d = 1; d < R; ++d) {
    if (std::gcd(d, W) != 1 || oracle::mobius(d) == 0) continue;
    for (std::int64_t e = 1; e < R; ++e) {
      if (std::gcd(e, W) != 1 || oracle::mobius(e) == 0) continue;
      const std::int64_t l = d / std::gcd(d, e) * e;
      const long double den = totient ? oracle::totient_factored(l) : l;
      s += oracle::mobius(d) * oracle::mobius(e) * f(d) * f(e) / den;
    }
  }
  return s;
}

// k = 1 with the pairwise coprimality of W, [d0, e0], [d1, e1].
long double identity_k1(std::int64_t W, std::int64_t R) {
  const long double L = std::log(static_cast<long double>(R));
  const long double T = 0.5L;
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 1; d * d < R; ++d)
    if (std::gcd(d, W) == 1 && oracle::mobius(d) != 0) ds.push_back(d);
  const auto f = [&](std::int64_t d) { return T - std::log(static_cast<long double>(d)) / L; };
  long double s = 0;
  for (const auto d0 : ds)
    for (const auto e0 : ds)
      for (const auto d1 : ds)
        for (const auto e1 : ds) {
          const auto l0 = d0 / std::gcd(d0, e0) * e0;
          const auto l1 = d1 / std::gcd(d1, e1) * e1;
          if (std::gcd(l0, l1) != 1) continue;
          s += oracle::mobius(d0) * oracle::mobius(e0) * oracle::mobius(d1) * oracle::mobius(e1) *
               f(d0) * f(e0) * f(d1) * f(e1) / static_cast<long double>(l0 * l1);
        }
  return s;
}

}  // namespace

TEST(Identity, KZeroTwoRoutesAndDefinition) {
  const auto t = build_prime_table(2000);
  const auto F = TestFunction::linear_default(0);
  for (const auto kind : {Denominator::kLcm, Denominator::kTotient}) {
    for (const std::int64_t R : {10, 100, 1000}) {
      const double a = maynard_lhs(0, 2, R, F, F, kind, t, SumRoute::kDirect);
      const double b = maynard_lhs(0, 2, R, F, F, kind, t, SumRoute::kDiagonal);
      EXPECT_EQ(a, b) << R;
      const long double want = identity_k0(2, R, kind == Denominator::kTotient);
      EXPECT_NEAR(a / static_cast<double>(want), 1.0, 1e-12) << R;
      EXPECT_GT(a, 0.0);
    }
  }
}

TEST(Identity, KOneAgainstDefinition) {
  const auto t = build_prime_table(2000);
  const auto F = TestFunction::linear_default(1);
  for (const std::int64_t R : {30, 100, 400}) {
    const double a = maynard_lhs(1, 2, R, F, F, Denominator::kLcm, t);
    EXPECT_NEAR(a / static_cast<double>(identity_k1(2, R)), 1.0, 1e-12) << R;
    EXPECT_GT(a, 0.0);
  }
}

TEST(Identity, RatioApproachesOne) {
  const auto t = build_prime_table(10001);
  const auto F = TestFunction::linear_default(0);
  double prev = INFINITY;
  for (const std::int64_t R : {100, 1000, 10000}) {
    const double r = maynard_lhs(0, 6, R, F, F, Denominator::kLcm, t) / maynard_rhs(0, 6, R, F, F);
    EXPECT_LT(std::fabs(1.0 - r), prev);
    prev = std::fabs(1.0 - r);
  }
  EXPECT_LT(prev, 0.3);
}

TEST(Identity, Rejections) {
  const auto t = build_prime_table(2000);
  const auto F0 = TestFunction::linear_default(0);
  const auto F1 = TestFunction::linear_default(1);
  EXPECT_THROW(maynard_lhs(1, 2, 100, F1, F1, Denominator::kLcm, t, SumRoute::kDiagonal), ValidationError);
  EXPECT_THROW(maynard_lhs(0, 2, 1000, F0, F0, Denominator::kLcm, t, SumRoute::kDirect, 10.0),
               ValidationError);
  EXPECT_THROW(maynard_lhs(0, 2, 1000, F1, F1, Denominator::kLcm, t), ValidationError);
}

TEST(Identity, RhsClosedForm) {
  const auto F = TestFunction::linear_default(0);
  // (W/phi(W)) / log R with int f'^2 = 1.
  EXPECT_NEAR(maynard_rhs(0, 6, 100, F, F), 3.0 / std::log(100.0), 1e-15);
}
