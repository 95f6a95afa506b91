#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgap/primes.hpp"

namespace bgap {

/// One polynomial piece: sum_i coeffs[i] * t^i on [start, next start).
/// Coefficients are in absolute t, not shifted to the piece start.
struct PolyPiece {
  double start = 0.0;
  std::vector<double> coeffs;
};

/// Continuous piecewise polynomial on [0, end], identically zero outside
/// [0, end) and with value 0 at end.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<PolyPiece> pieces, double end);

  double operator()(double t) const;
  double derivative(double t) const;
  double end() const { return end_; }
  const std::vector<PolyPiece>& pieces() const { return pieces_; }

  /// Integral over [0, end] of f' g', evaluated exactly piece by piece from
  /// the coefficients. Both functions must share the same end point.
  double derivative_inner(const PiecewisePolynomial& g) const;

 private:
  std::vector<PolyPiece> pieces_;
  double end_ = 0.0;
};

/// F(t_0..t_k) = prod_j f(t_j), f supported on [0, T], T = 1/(k+1).
class TestFunction {
 public:
  TestFunction(int k, PiecewisePolynomial f);

  /// f(t) = T - t.
  static TestFunction linear_default(int k);
  /// "linear", or "b0:c0,c1,...|b1:c0,c1,...|..." with b0 = 0 and pieces
  /// ending at T = 1/(k+1).
  static TestFunction parse(const std::string& spec, int k);

  int k() const { return k_; }
  double T() const { return f_.end(); }
  const PiecewisePolynomial& factor() const { return f_; }
  double f(double t) const { return f_(t); }

  double eval_F(std::span<const double> t) const;

  /// J_i = f(0)^2 (int f'^2)^k. Independent of i for tensor F.
  double J_i(int i) const;
  /// J_* = (int f'^2)^(k+1).
  double J_star() const;
  /// int f' g' over [0, T] for two factors of the same k.
  double derivative_inner(const TestFunction& g) const;

  std::string describe() const;

 private:
  int k_;
  PiecewisePolynomial f_;
};

/// F(log d_0/log R, ..., log d_k/log R) * prod mu(d_j).
double lambda_weight(const TestFunction& F, std::span<const std::int64_t> d, std::int64_t R,
                     const PrimeTable& t);

}  // namespace bgap
