#include "bgap/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bgap/error.hpp"

namespace bgap {
namespace {

constexpr double kContinuityTol = 1e-12;

// Multiplying in sorted order makes tensor products exactly symmetric.
double sorted_product(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  double p = 1.0;
  for (const double x : v) p *= x;
  return p;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

std::vector<double> derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Integral of the polynomial over [lo, hi].
double integrate(const std::vector<double>& c, double lo, double hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double e = static_cast<double>(i + 1);
    s += c[i] * (std::pow(hi, e) - std::pow(lo, e)) / e;
  }
  return s;
}

std::size_t piece_index(const std::vector<PolyPiece>& pieces, double t) {
  std::size_t i = 0;
  while (i + 1 < pieces.size() && t >= pieces[i + 1].start) ++i;
  return i;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<PolyPiece> pieces, double end)
    : pieces_(std::move(pieces)), end_(end) {
  require(!pieces_.empty(), "test function: at least one polynomial piece required");
  require(end_ > 0.0, "test function: support end must be positive");
  require(pieces_.front().start == 0.0, "test function: first breakpoint must be 0");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double hi = i + 1 < pieces_.size() ? pieces_[i + 1].start : end_;
    require(pieces_[i].start < hi, "test function: breakpoints must increase strictly below T");
    require(!pieces_[i].coeffs.empty(), "test function: empty coefficient list");
    if (i + 1 < pieces_.size()) {
      const double left = horner(pieces_[i].coeffs, hi);
      const double right = horner(pieces_[i + 1].coeffs, hi);
      require(std::abs(left - right) <= kContinuityTol,
              "test function: discontinuity at breakpoint " + std::to_string(hi));
    }
  }
  require(std::abs(horner(pieces_.back().coeffs, end_)) <= kContinuityTol,
          "test function: f(T) must be 0");
}

double PiecewisePolynomial::operator()(double t) const {
  if (!(t >= 0.0) || t >= end_) return 0.0;
  return horner(pieces_[piece_index(pieces_, t)].coeffs, t);
}

double PiecewisePolynomial::derivative(double t) const {
  if (!(t >= 0.0) || t >= end_) return 0.0;
  return horner(derive(pieces_[piece_index(pieces_, t)].coeffs), t);
}

double PiecewisePolynomial::derivative_inner(const PiecewisePolynomial& g) const {
  require(end_ == g.end_, "derivative_inner: factors have different supports");
  std::vector<double> cuts;
  for (const auto& p : pieces_) cuts.push_back(p.start);
  for (const auto& p : g.pieces_) cuts.push_back(p.start);
  cuts.push_back(end_);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const auto& a = pieces_[piece_index(pieces_, lo)].coeffs;
    const auto& b = g.pieces_[piece_index(g.pieces_, lo)].coeffs;
    s += integrate(multiply(derive(a), derive(b)), lo, hi);
  }
  return s;
}

TestFunction::TestFunction(int k, PiecewisePolynomial f) : k_(k), f_(std::move(f)) {
  require(k >= 0, "test function: k must be >= 0");
  const double T = 1.0 / (k + 1);
  require(std::abs(f_.end() - T) <= kContinuityTol, "test function: support must end at 1/(k+1)");
}

TestFunction TestFunction::linear_default(int k) {
  require(k >= 0, "test function: k must be >= 0");
  const double T = 1.0 / (k + 1);
  return TestFunction(k, PiecewisePolynomial({PolyPiece{0.0, {T, -1.0}}}, T));
}

TestFunction TestFunction::parse(const std::string& spec, int k) {
  if (spec.empty() || spec == "linear") return linear_default(k);
  std::vector<PolyPiece> pieces;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, '|')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "f-spec: piece '" + item + "' lacks 'breakpoint:'");
    PolyPiece piece;
    try {
      piece.start = std::stod(item.substr(0, colon));
      std::stringstream cs(item.substr(colon + 1));
      std::string c;
      while (std::getline(cs, c, ',')) piece.coeffs.push_back(std::stod(c));
    } catch (const std::logic_error&) {
      fail_validation("f-spec: cannot parse piece '" + item + "'");
    }
    pieces.push_back(std::move(piece));
  }
  return TestFunction(k, PiecewisePolynomial(std::move(pieces), 1.0 / (k + 1)));
}

double TestFunction::eval_F(std::span<const double> t) const {
  require(static_cast<int>(t.size()) == k_ + 1, "eval_F: expected k+1 coordinates");
  std::vector<double> vals;
  vals.reserve(t.size());
  for (const double x : t) vals.push_back(f_(x));
  return sorted_product(vals);
}

double TestFunction::J_i(int i) const {
  require(i >= 0 && i <= k_, "J_i: index out of range");
  const double f0 = f_(0.0);
  return f0 * f0 * std::pow(f_.derivative_inner(f_), k_);
}

double TestFunction::J_star() const { return std::pow(f_.derivative_inner(f_), k_ + 1); }

double TestFunction::derivative_inner(const TestFunction& g) const {
  require(k_ == g.k_, "derivative_inner: mismatched k");
  return f_.derivative_inner(g.f_);
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < f_.pieces().size(); ++i) {
    const auto& p = f_.pieces()[i];
    os << (i ? "|" : "") << p.start << ":";
    for (std::size_t j = 0; j < p.coeffs.size(); ++j) os << (j ? "," : "") << p.coeffs[j];
  }
  return os.str();
}

double lambda_weight(const TestFunction& F, std::span<const std::int64_t> d, std::int64_t R,
                     const PrimeTable& t) {
  require(R >= 2, "lambda_weight: R must be >= 2");
  require(static_cast<int>(d.size()) == F.k() + 1, "lambda_weight: expected k+1 divisors");
  const double log_R = std::log(static_cast<double>(R));
  std::vector<double> vals;
  vals.reserve(d.size());
  for (const auto dj : d) {
    const int mu = mobius(dj, t);
    if (mu == 0) return 0.0;
    vals.push_back(mu * F.f(std::log(static_cast<double>(dj)) / log_R));
  }
  return sorted_product(vals);
}

}  // namespace bgap
