#include <cmath>

#include "bgap/kernels.hpp"

namespace bgap::kernels::scalar {
namespace {

// Same operand semantics as _mm256_max_pd / _mm256_min_pd (second operand on
// ties and unordered), so signed zeros match the vector path bit for bit.
inline double vmax(double a, double b) { return a > b ? a : b; }
inline double vmin(double a, double b) { return a < b ? a : b; }

}  // namespace

void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out) {
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = static_cast<double>(n[i]);
    const double p = x * alpha.hi;
    const double err = std::fma(x, alpha.hi, -p);
    const double fp = p - std::floor(p);
    const double tail = std::fma(x, alpha.lo, err);
    double r = fp + tail;
    r = r - std::floor(r);
    out[i] = r >= 1.0 ? r - 1.0 : r;
  }
}

void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out) {
  for (std::size_t i = 0; i < frac_shift.size(); ++i) {
    double s = offset - frac_shift[i];
    s = s - std::floor(s);
    s = s >= 1.0 ? s - 1.0 : s;
    const double end = s + len_b;
    const double first = vmax(vmin(len_a, end) - s, 0.0);
    const double second = vmax(vmin(len_a, end - 1.0), 0.0);
    out[i] = first + second;
  }
}

}  // namespace bgap::kernels::scalar
