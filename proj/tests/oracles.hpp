#pragma once

// Independent reference implementations. Nothing here calls into bgap, so a
// shared bug cannot make both sides agree.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Plain Eratosthenes bitmap, unrelated to the linear spf sieve.
inline std::vector<bool> eratosthenes(std::int64_t limit) {
  std::vector<bool> p(static_cast<std::size_t>(limit + 1), true);
  p[0] = false;
  if (limit >= 1) p[1] = false;
  for (std::int64_t i = 2; i * i <= limit; ++i)
    if (p[static_cast<std::size_t>(i)])
      for (std::int64_t j = i * i; j <= limit; j += i) p[static_cast<std::size_t>(j)] = false;
  return p;
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

// Product formula over trial-division factors, for arguments too large to count.
inline std::int64_t totient_factored(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  return n > 1 ? r - r / n : r;
}

inline std::int64_t tau(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 40) {
  const auto step = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = step(lo, mid, flo, flm, fmid);
    const double right = step(mid, hi, fmid, frm, fhi);
    if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, flo, flm, fmid, left, eps / 2, d - 1) +
           rec(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, step(a, b, fa, fm, fb), tol, depth);
}

// e(p/q) with exact integer reduction and long double trig.
inline std::complex<long double> e_rational(std::int64_t p, std::int64_t q) {
  const std::int64_t r = ((p % q) + q) % q;
  const long double y = static_cast<long double>(r) / static_cast<long double>(q);
  const long double two_pi = 6.283185307179586476925286766559L;
  return {std::cos(two_pi * y), std::sin(two_pi * y)};
}

// Omega_n by definition: enumerate every (d_0..d_k) with d_j | n + h_j,
// weights in long double.
inline long double omega_root(std::int64_t n, const std::vector<std::int64_t>& h, double R,
                              const std::function<long double(long double)>& f) {
  const long double logR = std::log(static_cast<long double>(R));
  std::vector<long double> per;
  for (const auto hj : h) {
    long double s = 0;
    for (const auto d : divisors(n + hj)) {
      const int mu = mobius(d);
      if (mu == 0) continue;
      s += mu * f(std::log(static_cast<long double>(d)) / logR);
    }
    per.push_back(s);
  }
  long double prod = 1;
  for (const auto s : per) prod *= s;
  return prod;
}

}  // namespace oracle
