#include "bgap/exact.hpp"

#include <cmath>
#include <cstdint>
#include <mpfr.h>

#include "bgap/error.hpp"

namespace bgap {

Dyadic::Dyadic(double x) {
  if (x == 0.0) return;
  if (!std::isfinite(x)) throw InvariantError("Dyadic: non-finite input");
  int e = 0;
  const double frac = std::frexp(x, &e);  // x = frac * 2^e, 0.5 <= |frac| < 1
  const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  mant_ = static_cast<long>(m);
  exp_ = e - 53;
}

Dyadic Dyadic::from_int(long v) {
  Dyadic d;
  d.mant_ = v;
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (exp_ > o.exp_) {
    mant_ <<= static_cast<mp_bitcnt_t>(exp_ - o.exp_);
    exp_ = o.exp_;
    mant_ += o.mant_;
  } else if (exp_ < o.exp_) {
    mpz_class t = o.mant_ << static_cast<mp_bitcnt_t>(o.exp_ - exp_);
    mant_ += t;
  } else {
    mant_ += o.mant_;
  }
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) {
  Dyadic neg = o;
  neg.mant_ = -neg.mant_;
  return *this += neg;
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  Dyadic r;
  if (a.is_zero() || b.is_zero()) return r;
  r.mant_ = a.mant_ * b.mant_;
  r.exp_ = a.exp_ + b.exp_;
  return r;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  Dyadic d = a;
  d -= b;
  return d.is_zero();
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_z_2exp(x, mant_.get_mpz_t(), exp_, MPFR_RNDN);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

}  // namespace bgap
