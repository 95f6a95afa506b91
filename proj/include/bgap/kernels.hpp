#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference in
// bgap::kernels::scalar and, on x86-64, an AVX2/FMA variant in
// bgap::kernels::avx2. The public entry points dispatch at runtime.
//
// Both variants perform the same IEEE operations in the same order (no
// contraction, explicit fma where the reference uses std::fma), so their
// outputs are bitwise identical. tests/test_kernels.cpp checks this.

#include <cstdint>
#include <optional>
#include <span>

namespace bgap::kernels {

enum class Isa { kScalar, kAvx2 };

/// ISA used by the dispatching entry points. Honors BGAP_FORCE_SCALAR=1.
Isa active_isa();
/// True when this binary carries the AVX2 variant and the CPU supports it.
bool avx2_available();
/// Test hook: pin the dispatch target (nullopt restores auto-detection).
void force_isa(std::optional<Isa> isa);
const char* isa_name(Isa isa);

/// alpha = hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

/// Largest |n| accepted by frac_mul (exact int64 -> double conversion).
inline constexpr std::int64_t kMaxFracMulArg = std::int64_t{1} << 51;

/// out[i] = frac(n[i] * alpha) in [0, 1), with the product's rounding error
/// carried through an fma so the result is accurate to ~1 ulp of 1 even
/// when n * alpha is large.
void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out);

/// Overlap length on the circle of [0, len_a) with [s, s + len_b), where
/// s = frac(offset - frac_shift[i]). Requires 0 <= len_a, len_b <= 1.
void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out);

namespace scalar {
void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out);
void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out);
void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out);
}  // namespace avx2

}  // namespace bgap::kernels
