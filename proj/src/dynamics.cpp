#include "bgap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bgap/error.hpp"
#include "bgap/exact.hpp"
#include "bgap/kernels.hpp"
#include "bgap/sieve.hpp"

namespace bgap {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Circle intervals [a, a + la) and [b, b + lb) overlap with positive length.
bool arcs_overlap(double a, double la, double b, double lb) {
  double s = b - a;
  s -= std::floor(s);
  return s < la || s + lb > 1.0;
}

constexpr std::size_t kBatch = 1024;

}  // namespace

double torus_norm(double x) { return std::fabs(x - std::nearbyint(x)); }

KroneckerSystem make_system(std::int64_t g, std::int64_t gamma0, std::vector<double> kappa) {
  require(g >= 1, "system: g must be >= 1");
  for (auto& k : kappa) {
    require(std::isfinite(k), "system: kappa must be finite");
    k -= std::floor(k);
  }
  return KroneckerSystem{g, mod(gamma0, g), std::move(kappa)};
}

std::vector<double> sqrt_primes(int d) {
  require(d >= 0, "sqrt_primes: d must be >= 0");
  std::vector<double> out;
  const auto ps = primes_up_to(std::max(10, 20 * d + 10));
  for (int c = 0; c < d; ++c) {
    const double r = std::sqrt(static_cast<double>(ps[static_cast<std::size_t>(c)]));
    out.push_back(r - std::floor(r));
  }
  return out;
}

BoxSet::BoxSet(const KroneckerSystem& sys, std::vector<BoxPiece> pieces)
    : pieces_(std::move(pieces)) {
  const auto d = static_cast<std::size_t>(sys.d());
  for (auto& pc : pieces_) {
    require(pc.gamma >= 0 && pc.gamma < sys.g, "set: group element outside Z/g");
    require(pc.cube.corner.size() == d, "set: cube corner dimension differs from the torus");
    require(pc.cube.side > 0.0 && pc.cube.side <= 1.0, "set: cube side must lie in (0, 1]");
    for (const double c : pc.cube.corner)
      require(c >= 0.0 && c < 1.0, "set: cube corners must lie in [0, 1)");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      const auto& a = pieces_[i];
      const auto& b = pieces_[j];
      if (a.gamma != b.gamma) continue;
      bool all = true;
      for (std::size_t c = 0; c < d && all; ++c)
        all = arcs_overlap(a.cube.corner[c], a.cube.side, b.cube.corner[c], b.cube.side);
      require(!all, "set: pieces " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    }
  }
  for (const auto& pc : pieces_) measure_ += std::pow(pc.cube.side, static_cast<double>(d));
  measure_ /= static_cast<double>(sys.g);
}

BoxSet BoxSet::whole(const KroneckerSystem& sys) {
  std::vector<BoxPiece> pieces;
  for (std::int64_t g = 0; g < sys.g; ++g)
    pieces.push_back({g, Cube{std::vector<double>(static_cast<std::size_t>(sys.d()), 0.0), 1.0}});
  return BoxSet(sys, std::move(pieces));
}

void correlations(const KroneckerSystem& sys, const BoxSet& A, std::span<const std::int64_t> n,
                  std::span<double> out) {
  require(out.size() >= n.size(), "correlations: output too small");
  for (const auto v : n)
    require(v > -kernels::kMaxFracMulArg && v < kernels::kMaxFracMulArg,
            "correlations: |n| must be below 2^51");
  const std::size_t m = n.size();
  const auto d = static_cast<std::size_t>(sys.d());
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m), 0.0);

  // frac(n kappa_c), one row per coordinate.
  std::vector<std::vector<double>> shift(d, std::vector<double>(m));
  for (std::size_t c = 0; c < d; ++c)
    kernels::frac_mul(n, kernels::DoubleDouble{sys.kappa[c], 0.0}, shift[c]);

  std::vector<double> prod(m), ov(m);
  const auto& pcs = A.pieces();
  for (const auto& pi : pcs) {
    for (const auto& pj : pcs) {
      std::fill(prod.begin(), prod.end(), 1.0);
      for (std::size_t c = 0; c < d; ++c) {
        kernels::circle_overlap(shift[c], pj.cube.corner[c] - pi.cube.corner[c], pi.cube.side,
                                pj.cube.side, ov);
        for (std::size_t x = 0; x < m; ++x) prod[x] *= ov[x];
      }
      for (std::size_t x = 0; x < m; ++x) {
        // The group coordinates must line up: gamma_i + n gamma0 = gamma_j.
        const std::int64_t g = mod(pi.gamma + mod(n[x], sys.g) * sys.gamma0 - pj.gamma, sys.g);
        if (g == 0) out[x] += prod[x];
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) out[x] /= static_cast<double>(sys.g);
}

double correlation(const KroneckerSystem& sys, const BoxSet& A, std::int64_t n) {
  double v = 0.0;
  correlations(sys, A, std::span<const std::int64_t>(&n, 1), std::span<double>(&v, 1));
  return v;
}

std::vector<std::int64_t> khintchine_set(const KroneckerSystem& sys, const BoxSet& A, double eps,
                                         std::int64_t n_max) {
  require(eps > 0.0, "khintchine_set: eps must be positive");
  require(n_max >= 0, "khintchine_set: n_max must be >= 0");
  const double thr = A.measure() * A.measure() - eps;
  std::vector<std::int64_t> out, batch;
  std::vector<double> corr;
  for (std::int64_t lo = 0; lo <= n_max; lo += static_cast<std::int64_t>(kBatch)) {
    batch.clear();
    for (std::int64_t n = lo; n <= std::min(n_max, lo + static_cast<std::int64_t>(kBatch) - 1); ++n)
      batch.push_back(n);
    corr.resize(batch.size());
    correlations(sys, A, batch, corr);
    for (std::size_t j = 0; j < batch.size(); ++j)
      if (corr[j] >= thr) out.push_back(batch[j]);
  }
  return out;
}

std::vector<std::int64_t> shifted_prime_recurrence_set(const KroneckerSystem& sys,
                                                       const BoxSet& A, double eps,
                                                       std::int64_t p_max, const PrimeTable& t) {
  t.check_range(p_max, 2, "shifted_prime_recurrence_set (p_max)");
  const double thr = A.measure() * A.measure() - eps;
  std::vector<std::int64_t> out, shifts, primes;
  std::vector<double> corr;
  auto flush = [&] {
    corr.resize(shifts.size());
    correlations(sys, A, shifts, corr);
    for (std::size_t j = 0; j < shifts.size(); ++j)
      if (corr[j] >= thr) out.push_back(primes[j]);
    shifts.clear();
    primes.clear();
  };
  for (const auto p : t.primes()) {
    if (p > p_max) break;
    primes.push_back(p);
    shifts.push_back(static_cast<std::int64_t>(p) - 1);
    if (shifts.size() == kBatch) flush();
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// Bump function

std::complex<double> BumpPsi::alpha(std::int64_t j) const {
  const double L = delta0 - delta1;
  if (j == 0) return {L, 0.0};
  const double jd = static_cast<double>(j);
  const double pi = std::numbers::pi;
  auto one_minus_e = [&](double y) {  // 1 - e(-y)
    const double ang = -2.0 * pi * y;
    return std::complex<double>(1.0 - std::cos(ang), -std::sin(ang));
  };
  const std::complex<double> num = one_minus_e(jd * L) * one_minus_e(jd * delta1);
  return -num / (4.0 * pi * pi * jd * jd * delta1);
}

double BumpPsi::envelope(std::int64_t j) const {
  const double a = std::fabs(static_cast<double>(j));
  if (a == 0.0) return delta0 - delta1;
  return std::min({1.0 / a, delta0 - delta1, 1.0 / (delta1 * a * a)});
}

double BumpPsi::value(double x) const {
  x -= std::floor(x);
  if (x >= delta0) return 0.0;
  if (x < delta1) return x / delta1;
  if (x <= delta0 - delta1) return 1.0;
  return (delta0 - x) / delta1;
}

double BumpPsi::partial_sum(double x, int K) const {
  require(K >= 0, "partial_sum: K must be >= 0");
  double s = 0.0;
  for (int j = K; j >= 1; --j) {
    const std::complex<double> a = j < static_cast<int>(fourier.size()) ? fourier[static_cast<std::size_t>(j)]
                                                                          : alpha(j);
    const double ang = 2.0 * std::numbers::pi * (static_cast<double>(j) * x - std::floor(static_cast<double>(j) * x));
    s += 2.0 * (a.real() * std::cos(ang) - a.imag() * std::sin(ang));
  }
  return (delta0 - delta1) + s;
}

BumpPsi build_bump(double delta0, double delta1, int K) {
  require(delta1 > 0.0 && delta1 < delta0 / 2.0 && delta0 / 2.0 < 0.5,
          "build_bump: need 0 < delta1 < delta0/2 < 1/2");
  require(K >= 1, "build_bump: K must be >= 1");
  BumpPsi psi;
  psi.delta0 = delta0;
  psi.delta1 = delta1;
  psi.fourier.resize(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) psi.fourier[static_cast<std::size_t>(j)] = psi.alpha(j);
  for (int j = 1; j <= K; ++j)
    psi.C0 = std::max(psi.C0, std::abs(psi.fourier[static_cast<std::size_t>(j)]) / psi.envelope(j));
  return psi;
}

// ---------------------------------------------------------------------------
// Cube-pair constants and sums

std::int64_t cube_pair_L0(int d, double eps1, double g_norm1) {
  require(d >= 1, "cube_pair_L0: d must be >= 1");
  require(eps1 > 0.0 && g_norm1 > 0.0 && eps1 < g_norm1 * g_norm1,
          "cube_pair_L0: need 0 < eps1 < ||g||_1^2");
  const double rhs = std::cbrt(1.0 - eps1 / (g_norm1 * g_norm1));
  for (std::int64_t L = 2; L < (std::int64_t{1} << 40); ++L)
    if (std::pow(1.0 - 1.0 / static_cast<double>(L), d) > rhs) return L;
  throw InvariantError("cube_pair_L0: search did not terminate");
}

K0Choice cube_pair_K0(int d, double delta0, double delta1, double C0, std::int64_t L0,
                    std::int64_t cap) {
  require(d >= 1 && L0 >= 2 && cap >= 1, "cube_pair_K0: need d >= 1, L0 >= 2, cap >= 1");
  require(delta1 > 0.0 && delta0 > delta1 && C0 > 0.0, "cube_pair_K0: invalid bump parameters");
  const double rhs = std::pow(delta0 - delta1, d) * delta1 /
                     (std::pow(2.0 * C0, d) * d) *
                     (1.0 - std::pow(1.0 - 1.0 / static_cast<double>(L0), d));
  auto ok = [&](std::int64_t K) {
    const double Kd = static_cast<double>(K);
    return std::pow(std::log(Kd) + 1.0 / (delta1 * Kd) + 1.0, d - 1) / Kd < rhs;
  };
  if (!ok(cap)) return {cap, true};
  // The left side decreases in K over the range of interest; bisect.
  std::int64_t lo = 0, hi = cap;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return {hi, false};
}

namespace {

struct SumAcc {
  ExactSum s;
  void merge(const SumAcc& o) { s.merge(o.s); }
};

// sum over n ~ N, n = b (W), n + h_i prime of varpi(n + h_i) Omega_n w(n + h_i - 1),
// with w supplied in batches.
template <typename BatchWeight>
ExactSum weighted_by(const SieveParams& p, const TestFunction& F, int i, const PrimeTable& t,
                     const Exec& exec, BatchWeight weight) {
  const std::int64_t off = p.tuple.h[static_cast<std::size_t>(i)];
  const SumAcc acc = parallel_reduce<SumAcc>(
      p.count(), exec, [&](std::int64_t lo, std::int64_t hi, SumAcc& out) {
        std::vector<std::int64_t> shifts;
        std::vector<double> vp, om, w;
        auto flush = [&] {
          w.resize(shifts.size());
          weight(shifts, w);
          for (std::size_t j = 0; j < shifts.size(); ++j) out.s.add_product(vp[j], om[j], w[j]);
          shifts.clear();
          vp.clear();
          om.clear();
        };
        for (std::int64_t idx = lo; idx < hi; ++idx) {
          const std::int64_t n = p.n_at(idx);
          if (!t.is_prime_unchecked(n + off)) continue;
          const double r = omega_root(n, p, F, t);
          shifts.push_back(n + off - 1);
          vp.push_back(std::log(static_cast<double>(n + off)));
          om.push_back(r * r);
          if (shifts.size() == kBatch) flush();
        }
        flush();
      });
  return acc.s;
}

}  // namespace

SumReport weighted_correlation_sum(const SieveParams& p, const TestFunction& F,
                                   const KroneckerSystem& sys, const BoxSet& A, int i, double eps,
                                   const PrimeTable& t, const Exec& exec) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  require(i >= 0 && i <= p.k(), "index i out of range 0..k");
  if (p.W0 % sys.g != 0)
    fail_validation("W0=" + std::to_string(p.W0) + " is not divisible by |G|=" +
                    std::to_string(sys.g) + " (the group order must divide W0)");
  check_table(p, t);
  require(p.count() > 0, "weighted_correlation_sum: empty progression");
  const ExactSum s = weighted_by(p, F, i, t, exec, [&](const std::vector<std::int64_t>& n,
                                                       std::vector<double>& w) {
    correlations(sys, A, n, w);
  });
  const double mu2 = A.measure() * A.measure();
  SumReport r;
  r.op = "weighted_correlation_sum";
  r.measured = s.value();
  r.predicted = (mu2 - eps) * predicted_weighted_sum(p, F, i);
  r.count = p.count();
  r.params = params_json(p, F);
  r.extra["i"] = i;
  r.extra["eps"] = real_json(eps);
  r.extra["measure"] = real_json(A.measure());
  r.extra["margin"] = real_json(r.measured.real() - r.predicted.real());
  return r;
}

SumReport cube_pair_sum(const SieveParams& p, const TestFunction& F,
                           const KroneckerSystem& sys, const CubePairSpec& spec,
                           const PrimeTable& t, const Exec& exec) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  const int d = sys.d();
  require(d >= 1, "cube_pair_sum: needs a torus part (d >= 1)");
  require(spec.eta0 > 0.0 && spec.eta0 <= 0.5, "cube_pair_sum: eta0 must lie in (0, 1/2]");
  require(static_cast<int>(spec.a.size()) == d && static_cast<int>(spec.b.size()) == d,
          "cube_pair_sum: cube indices need d entries");
  const auto top = static_cast<std::int64_t>(std::llround(1.0 / spec.eta0)) - 1;
  Cube ca{{}, spec.eta0}, cb{{}, spec.eta0};
  for (int c = 0; c < d; ++c) {
    require(spec.a[c] >= 0 && spec.a[c] <= top && spec.b[c] >= 0 && spec.b[c] <= top,
            "cube_pair_sum: cube indices must lie in [0, 1/eta0 - 1]");
    ca.corner.push_back(static_cast<double>(spec.a[c]) * spec.eta0);
    cb.corner.push_back(static_cast<double>(spec.b[c]) * spec.eta0);
  }
  check_table(p, t);
  require(p.count() > 0, "cube_pair_sum: empty progression");
  // m(C_a cap S^-m C_b) on the torus alone.
  const ExactSum s = weighted_by(p, F, 0, t, exec, [&](const std::vector<std::int64_t>& n,
                                                       std::vector<double>& w) {
    std::vector<double> ov(n.size()), shift(n.size());
    std::fill(w.begin(), w.end(), 1.0);
    for (int c = 0; c < d; ++c) {
      kernels::frac_mul(n, kernels::DoubleDouble{sys.kappa[c], 0.0}, shift);
      kernels::circle_overlap(shift, cb.corner[c] - ca.corner[c], spec.eta0, spec.eta0, ov);
      for (std::size_t x = 0; x < n.size(); ++x) w[x] *= ov[x];
    }
  });

  const double g_norm = spec.g_norm1 > 0.0 ? spec.g_norm1 : std::pow(spec.eta0, d);
  const std::int64_t L0 = cube_pair_L0(d, spec.eps1, g_norm);
  const double delta0 = spec.eta0 / static_cast<double>(L0);
  const double delta1 = delta0 / static_cast<double>(L0);
  const double shrink = std::pow(1.0 - 1.0 / static_cast<double>(L0), 3 * d);

  SumReport r;
  r.op = "cube_pair_sum";
  r.measured = s.value();
  r.predicted = shrink * std::pow(spec.eta0, 2 * d) * predicted_weighted_sum(p, F, 0);
  r.count = p.count();
  r.params = params_json(p, F);
  r.extra["L0"] = L0;
  r.extra["delta0"] = real_json(delta0);
  r.extra["delta1"] = real_json(delta1);
  if (delta1 < delta0 / 2.0) {
    const BumpPsi psi = build_bump(delta0, delta1, 2000);
    const K0Choice k0 = cube_pair_K0(d, delta0, delta1, psi.C0, L0, spec.k0_cap);
    r.extra["C0"] = real_json(psi.C0);
    r.extra["K0"] = k0.K0;
    r.extra["K0_capped"] = k0.capped;
  }
  return r;
}

}  // namespace bgap
