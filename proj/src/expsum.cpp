#include "bgap/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bgap/dynamics.hpp"
#include "bgap/error.hpp"
#include "bgap/exact.hpp"
#include "bgap/kernels.hpp"
#include "bgap/sieve.hpp"

namespace bgap {
namespace {

constexpr std::size_t kBatch = 1024;

struct ComplexAcc {
  ExactComplexSum s;
  void merge(const ComplexAcc& o) { s.merge(o.s); }
};

// Phases e(m (a/q + theta)) for a batch of m: the rational part is reduced
// exactly in integers, the real offset through the double-double kernel.
class PhaseBatch {
 public:
  explicit PhaseBatch(const RationalPoint& pt) : pt_(pt) {}

  void push(std::int64_t m) { m_.push_back(m); }
  std::size_t size() const { return m_.size(); }
  void clear() { m_.clear(); }

  const std::vector<std::int64_t>& values() const { return m_; }

  void compute(std::vector<std::complex<double>>& out) {
    frac_.resize(m_.size());
    if (pt_.theta != 0.0) {
      kernels::frac_mul(m_, kernels::DoubleDouble{pt_.theta, 0.0}, frac_);
    } else {
      std::fill(frac_.begin(), frac_.end(), 0.0);
    }
    out.resize(m_.size());
    for (std::size_t j = 0; j < m_.size(); ++j) {
      const std::int64_t r = (m_[j] % pt_.q) * pt_.a % pt_.q;
      out[j] = unit_phase(static_cast<double>(r) / static_cast<double>(pt_.q) + frac_[j]);
    }
  }

 private:
  RationalPoint pt_;
  std::vector<std::int64_t> m_;
  std::vector<double> frac_;
};

}  // namespace

RationalPoint make_point(std::int64_t a, std::int64_t q, double theta) {
  require(q >= 1, "rational point: q must be >= 1");
  require(a >= 1 && a <= q, "rational point: need 1 <= a <= q");
  require(gcd64(a, q) == 1, "rational point: gcd(a, q) must be 1");
  require(std::isfinite(theta), "rational point: theta must be finite");
  return RationalPoint{a, q, theta};
}

std::complex<double> unit_phase(double y) {
  const double r = y - std::nearbyint(y);
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5 || r == -0.5) return {-1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == -0.25) return {0.0, -1.0};
  const double ang = 2.0 * std::numbers::pi * r;
  return {std::cos(ang), std::sin(ang)};
}

std::complex<double> geometric_sum(std::int64_t x, double theta) {
  const long double th = static_cast<long double>(theta) - std::nearbyint(static_cast<long double>(theta));
  if (th == 0.0L) return {static_cast<double>(x + 1), 0.0};
  const long double pi = std::numbers::pi_v<long double>;
  const long double num = std::sin(pi * static_cast<long double>(x + 1) * th);
  const long double den = std::sin(pi * th);
  long double phase = 1.5L * static_cast<long double>(x) * th;
  phase -= std::floor(phase);
  const std::complex<double> e = unit_phase(static_cast<double>(phase));
  return e * static_cast<double>(num / den);
}

std::complex<double> prime_expsum(std::int64_t x, std::int64_t D, std::int64_t b,
                                  const RationalPoint& pt, const PrimeTable& t,
                                  const Exec& exec) {
  require(x >= 1, "prime_expsum: x must be >= 1");
  require(D >= 1, "prime_expsum: D must be >= 1");
  require(gcd64(b, D) == 1, "prime_expsum: gcd(b, D) = " + std::to_string(gcd64(b, D)) + " != 1");
  t.check_range(2 * x, 2, "prime_expsum (table must cover 2x)");
  make_point(pt.a, pt.q, pt.theta);
  const std::int64_t first = x + ((b - x) % D + D) % D;
  const std::int64_t count = first > 2 * x ? 0 : (2 * x - first) / D + 1;
  const ComplexAcc acc = parallel_reduce<ComplexAcc>(
      count, exec, [&](std::int64_t lo, std::int64_t hi, ComplexAcc& out) {
        PhaseBatch batch(pt);
        std::vector<std::complex<double>> ph;
        auto flush = [&] {
          batch.compute(ph);
          for (std::size_t j = 0; j < batch.size(); ++j)
            out.s.add_scaled(ph[j], std::log(static_cast<double>(batch.values()[j])));
          batch.clear();
        };
        for (std::int64_t idx = lo; idx < hi; ++idx) {
          const std::int64_t n = first + idx * D;
          if (!t.is_prime_unchecked(n)) continue;
          batch.push(n);
          if (batch.size() == kBatch) flush();
        }
        flush();
      });
  return acc.s.value();
}

std::complex<double> progression_main_term(std::int64_t x, std::int64_t D, std::int64_t b,
                                       const RationalPoint& pt) {
  require(D >= 1, "progression_main_term: D must be >= 1");
  require(gcd64(b, D) == 1, "progression_main_term: gcd(b, D) != 1");
  make_point(pt.a, pt.q, pt.theta);
  const std::int64_t u = gcd64(D, pt.q);
  const std::int64_t v = pt.q / u;
  if (gcd64(u, v) != 1) return {0.0, 0.0};
  const std::int64_t vbar = inverse_mod(v, u);
  const int mu = mobius_trial(v);
  if (mu == 0) return {0.0, 0.0};
  const std::int64_t lcm = D / u * pt.q;
  // a b vbar mod u, reduced stepwise to stay inside 64 bits.
  const std::int64_t num = ((pt.a % u) * (((b % u) + u) % u) % u) * vbar % u;
  const std::complex<double> phase = unit_phase(static_cast<double>(num) / static_cast<double>(u));
  return static_cast<double>(mu) * phase / static_cast<double>(totient_trial(lcm)) *
         geometric_sum(x, pt.theta);
}

GridMaximum empirical_R(std::int64_t q, double delta, std::int64_t x, int theta_grid,
                        const PrimeTable& t, const Exec& exec) {
  require(q >= 1, "empirical_R: q must be >= 1");
  require(delta >= 0.0, "empirical_R: delta must be >= 0");
  require(theta_grid >= 3, "empirical_R: theta grid needs at least 3 points");
  std::vector<double> thetas;
  if (delta == 0.0) {
    thetas.push_back(0.0);
  } else {
    const int G = theta_grid;
    for (int i = 0; i < G; ++i) thetas.push_back(delta * (2.0 * i - (G - 1)) / (G - 1));
  }
  const double centre = mobius_trial(q) / static_cast<double>(totient_trial(q));
  GridMaximum best;
  best.grid = delta == 0.0 ? 1 : theta_grid;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (gcd64(a, q) != 1) continue;
    for (const double th : thetas) {
      const auto s = prime_expsum(x, 1, 1, RationalPoint{a, q, th}, t, exec);
      const double dev = std::abs(s - centre * geometric_sum(x, th));
      if (dev > best.value || best.a == 0) {
        best.value = dev;
        best.a = a;
        best.theta = th;
      }
    }
  }
  return best;
}

SumReport weighted_expsum(const SieveParams& p, const TestFunction& F, int i,
                          const RationalPoint& pt, const PrimeTable& t, const Exec& exec) {
  require(F.k() == p.k(), "test function k does not match the tuple");
  require(i >= 0 && i <= p.k(), "index i out of range 0..k");
  check_table(p, t);
  make_point(pt.a, pt.q, pt.theta);
  const std::int64_t hi_off = p.tuple.h[static_cast<std::size_t>(i)];
  const std::int64_t count = p.count();
  require(count > 0, "weighted_expsum: empty progression");
  const ComplexAcc acc = parallel_reduce<ComplexAcc>(
      count, exec, [&](std::int64_t lo, std::int64_t hi, ComplexAcc& out) {
        PhaseBatch batch(pt);
        std::vector<double> omega;
        std::vector<std::complex<double>> ph;
        auto flush = [&] {
          batch.compute(ph);
          for (std::size_t j = 0; j < batch.size(); ++j)
            out.s.add_scaled(ph[j], std::log(static_cast<double>(batch.values()[j])), omega[j]);
          batch.clear();
          omega.clear();
        };
        for (std::int64_t idx = lo; idx < hi; ++idx) {
          const std::int64_t n = p.n_at(idx);
          if (!t.is_prime_unchecked(n + hi_off)) continue;
          const double r = omega_root(n, p, F, t);
          batch.push(n + hi_off);
          omega.push_back(r * r);
          if (batch.size() == kBatch) flush();
        }
        flush();
      });

  const double scale = main_scale(p) / std::pow(p.log_R(), p.k());
  SumReport r;
  r.op = "weighted_expsum";
  r.complex_valued = true;
  r.measured = acc.s.value();
  r.count = count;
  r.params = params_json(p, F);
  r.extra["i"] = i;
  r.extra["a"] = pt.a;
  r.extra["q"] = pt.q;
  r.extra["theta"] = real_json(pt.theta);
  r.extra["main_magnitude"] = real_json(F.J_i(i) * scale);
  const bool divides = p.W % pt.q == 0;
  r.extra["q_divides_W"] = divides;
  if (divides) {
    const std::int64_t num = (pt.a * (((p.b + hi_off) % pt.q) + pt.q)) % pt.q;
    const auto phase = unit_phase(static_cast<double>(num) / static_cast<double>(pt.q));
    r.predicted = phase * (F.J_i(i) * scale / static_cast<double>(p.N)) *
                  geometric_sum(p.N, pt.theta);
  } else {
    r.predicted = 0.0;
    r.extra["bound"] = real_json(scale / std::pow(static_cast<double>(p.w), 0.99));
  }
  return r;
}

Approximation dirichlet_approx(double alpha, double x) {
  require(x >= 1.0, "dirichlet_approx: x must be >= 1");
  require(std::isfinite(alpha), "dirichlet_approx: alpha must be finite");
  const long double al = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
  const long double tol = 1.0L / static_cast<long double>(x);
  auto dist = [&](std::int64_t p, std::int64_t q) {
    return std::fabs(static_cast<long double>(q) * al - static_cast<long double>(p));
  };
  auto finish = [&](std::int64_t p, std::int64_t q) {
    std::int64_t a = ((p % q) + q) % q;
    if (a == 0) a = q;
    // Defining inequality |alpha - a/q|_T <= 1/(q x).
    const double err = torus_norm(static_cast<double>(al - static_cast<long double>(a) / q));
    if (err > (1.0 / (static_cast<double>(q) * x)) * (1.0 + 1e-9) || gcd64(a, q) != 1)
      throw InvariantError("dirichlet_approx: result violates its defining inequality");
    return Approximation{a, q};
  };

  // Least q with ||q alpha|| <= 1/x is a best approximation of the second
  // kind, hence a convergent.
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}/q_{-1}, p_0/q_0 for alpha in [0,1)
  long double rem = al;
  for (int it = 0; it < 200 && static_cast<long double>(q1) <= x; ++it) {
    if (dist(p1, q1) <= tol) return finish(p1, q1);
    if (rem == 0.0L) break;
    const long double inv = 1.0L / rem;
    const long double cf = std::floor(inv);
    rem = inv - cf;
    if (cf > 1e15L) break;
    const auto c = static_cast<std::int64_t>(cf);
    const std::int64_t p2 = c * p1 + p0, q2 = c * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (rem < 1e-18L) rem = 0.0L;
  }
  // Rounding in the expansion can skip the last convergent; scan directly.
  const auto qmax = static_cast<std::int64_t>(std::min(x, 1e7));
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(static_cast<long double>(q) * al));
    if (dist(p, q) <= tol) return finish(p, q);
  }
  throw InvariantError("dirichlet_approx: no q <= x found");
}

ArcLabel classify_arc(double alpha, std::int64_t N, const ArcExponents& ex) {
  require(N >= 100, "classify_arc: N must be >= 100");
  ArcLabel label;
  label.P = std::pow(static_cast<double>(N), ex.p_exp);
  label.Q = std::pow(static_cast<double>(N), ex.q_exp);
  const long double al = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
  const auto qmax = static_cast<std::int64_t>(std::floor(label.P));
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(static_cast<long double>(q) * al));
    std::int64_t a = p % q;
    if (a == 0) a = q;
    if (gcd64(a, q) != 1) continue;
    if (std::fabs(static_cast<long double>(q) * al - p) <= 1.0L / label.Q) {
      label.kind = ArcKind::kMajor;
      label.a = a;
      label.q = q;
      return label;
    }
  }
  const Approximation d = dirichlet_approx(alpha, label.Q);
  label.kind = ArcKind::kMinor;
  label.a = d.a;
  label.q = d.q;
  return label;
}

std::vector<MinorArcRecord> minor_arc_scan(const SieveParams& p, const TestFunction& F, int i,
                                           const std::vector<double>& alphas,
                                           const PrimeTable& t, const ArcExponents& ex,
                                           const Exec& exec) {
  std::vector<MinorArcRecord> out;
  const double Nd = static_cast<double>(p.N);
  const double logN = std::log(Nd);
  for (const double alpha : alphas) {
    const ArcLabel label = classify_arc(alpha, p.N, ex);
    if (label.kind != ArcKind::kMinor)
      fail_validation("minor_arc_scan: alpha=" + std::to_string(alpha) + " lies on the major arc " +
                      std::to_string(label.a) + "/" + std::to_string(label.q));
    MinorArcRecord rec;
    rec.alpha = alpha;
    rec.a = label.a;
    rec.q = label.q;
    const long double al = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
    rec.offset = static_cast<double>(al - static_cast<long double>(label.a) / label.q);
    const SumReport s = weighted_expsum(p, F, i, RationalPoint{label.a, label.q, rec.offset}, t, exec);
    rec.magnitude = std::abs(s.measured);
    rec.major_magnitude = F.J_i(i) * main_scale(p) / std::pow(p.log_R(), p.k());
    rec.ratio = rec.magnitude / rec.major_magnitude;
    const double D = static_cast<double>(p.W);
    const double u = static_cast<double>(gcd64(p.W, label.q));
    const double q = static_cast<double>(label.q);
    rec.bp_shape = (1.0 + std::fabs(rec.offset) * Nd) * std::pow(logN, 3) *
                   (u * Nd / (D * std::sqrt(q)) + std::sqrt(q) * std::sqrt(Nd) / std::sqrt(u) +
                    std::pow(Nd, 0.8) / std::pow(D, 0.4));
    rec.power_saving = std::pow(Nd, 1.0 - 1.0 / 999.0);
    out.push_back(rec);
  }
  return out;
}

nlohmann::json to_json(const MinorArcRecord& r) {
  nlohmann::json j;
  j["op"] = "minor_arc";
  j["alpha"] = real_json(r.alpha);
  j["a"] = r.a;
  j["q"] = r.q;
  j["offset"] = real_json(r.offset);
  j["magnitude"] = real_json(r.magnitude);
  j["major_magnitude"] = real_json(r.major_magnitude);
  j["ratio"] = real_json(r.ratio);
  j["bp_shape"] = real_json(r.bp_shape);
  j["power_saving"] = real_json(r.power_saving);
  return j;
}

}  // namespace bgap
