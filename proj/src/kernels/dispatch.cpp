#include <atomic>
#include <cstdlib>
#include <cstring>

#include "bgap/error.hpp"
#include "bgap/kernels.hpp"

namespace bgap::kernels {
namespace {

// -1: auto, otherwise static_cast<int>(Isa).
std::atomic<int> g_forced{-1};

bool cpu_has_avx2() {
#if defined(BGAP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  static const Isa detected = [] {
    const char* env = std::getenv("BGAP_FORCE_SCALAR");
    if (env != nullptr && std::strcmp(env, "0") != 0 && env[0] != '\0') return Isa::kScalar;
    return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return detected;
}

}  // namespace

bool avx2_available() {
  static const bool ok = cpu_has_avx2();
  return ok;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  return detect();
}

void force_isa(std::optional<Isa> isa) {
  if (isa == Isa::kAvx2 && !avx2_available())
    throw ValidationError("force_isa: AVX2 variant not available on this machine/build");
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out) {
  if (out.size() < n.size()) throw InvariantError("frac_mul: output span too small");
#if defined(BGAP_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::frac_mul(n, alpha, out);
#endif
  scalar::frac_mul(n, alpha, out);
}

void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out) {
  if (out.size() < frac_shift.size()) throw InvariantError("circle_overlap: output span too small");
#if defined(BGAP_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::circle_overlap(frac_shift, offset, len_a, len_b, out);
#endif
  scalar::circle_overlap(frac_shift, offset, len_a, len_b, out);
}

#if !defined(BGAP_HAVE_AVX2)
namespace avx2 {
void frac_mul(std::span<const std::int64_t>, DoubleDouble, std::span<double>) {
  throw InvariantError("AVX2 kernels not built");
}
void circle_overlap(std::span<const double>, double, double, double, std::span<double>) {
  throw InvariantError("AVX2 kernels not built");
}
}  // namespace avx2
#endif

}  // namespace bgap::kernels
