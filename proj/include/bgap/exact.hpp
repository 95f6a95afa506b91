#pragma once

#include <complex>
#include <gmpxx.h>

namespace bgap {

/// Exact dyadic rational m * 2^e backed by a GMP integer.
///
/// Every finite double is a dyadic rational, so sums and products of doubles
/// are representable without error. All reductions in the library accumulate
/// into this type and round once at the end, which makes results independent
/// of summation order, chunking and thread count.
class Dyadic {
 public:
  Dyadic() = default;
  explicit Dyadic(double x);
  static Dyadic from_int(long v);

  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator+=(double x) { return *this += Dyadic(x); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend bool operator==(const Dyadic& a, const Dyadic& b);

  /// Round to the nearest double, ties to even.
  double to_double() const;
  int sign() const { return sgn(mant_); }
  bool is_zero() const { return sgn(mant_) == 0; }

 private:
  mpz_class mant_{0};
  long exp_ = 0;
};

/// Order-independent accumulator for sums of doubles and products of doubles.
class ExactSum {
 public:
  void add(double x) {
    if (x != 0.0) acc_ += Dyadic(x);
  }
  void add_product(double a, double b) {
    if (a != 0.0 && b != 0.0) acc_ += Dyadic(a) * Dyadic(b);
  }
  void add_product(double a, double b, double c) {
    if (a != 0.0 && b != 0.0 && c != 0.0) acc_ += Dyadic(a) * Dyadic(b) * Dyadic(c);
  }
  void add_exact(const Dyadic& d) { acc_ += d; }
  void merge(const ExactSum& o) { acc_ += o.acc_; }

  double value() const { return acc_.to_double(); }
  const Dyadic& exact() const { return acc_; }

 private:
  Dyadic acc_;
};

struct ExactComplexSum {
  ExactSum re;
  ExactSum im;

  void add_scaled(std::complex<double> z, double w) {
    re.add_product(z.real(), w);
    im.add_product(z.imag(), w);
  }
  void add_scaled(std::complex<double> z, double w1, double w2) {
    re.add_product(z.real(), w1, w2);
    im.add_product(z.imag(), w1, w2);
  }
  void merge(const ExactComplexSum& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace bgap
