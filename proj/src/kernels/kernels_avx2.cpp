// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include "bgap/kernels.hpp"

namespace bgap::kernels::avx2 {
namespace {

// Exact int64 -> double for |v| < 2^51 via the 2^52 + 2^51 magic constant.
inline __m256d cvt_i64_pd(__m256i v) {
  const __m256i magic_i = _mm256_castpd_si256(_mm256_set1_pd(6755399441055744.0));
  const __m256d magic_d = _mm256_set1_pd(6755399441055744.0);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, magic_i)), magic_d);
}

// r >= 1 ? r - 1 : r
inline __m256d wrap_unit(__m256d r, __m256d one) {
  const __m256d ge = _mm256_cmp_pd(r, one, _CMP_GE_OQ);
  return _mm256_blendv_pd(r, _mm256_sub_pd(r, one), ge);
}

}  // namespace

void frac_mul(std::span<const std::int64_t> n, DoubleDouble alpha, std::span<double> out) {
  const std::size_t count = n.size();
  const __m256d hi = _mm256_set1_pd(alpha.hi);
  const __m256d lo = _mm256_set1_pd(alpha.lo);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i raw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(n.data() + i));
    const __m256d x = cvt_i64_pd(raw);
    const __m256d p = _mm256_mul_pd(x, hi);
    const __m256d err = _mm256_fmadd_pd(x, hi, _mm256_sub_pd(_mm256_setzero_pd(), p));
    const __m256d fp = _mm256_sub_pd(p, _mm256_floor_pd(p));
    const __m256d tail = _mm256_fmadd_pd(x, lo, err);
    __m256d r = _mm256_add_pd(fp, tail);
    r = _mm256_sub_pd(r, _mm256_floor_pd(r));
    _mm256_storeu_pd(out.data() + i, wrap_unit(r, one));
  }
  if (i < count) scalar::frac_mul(n.subspan(i), alpha, out.subspan(i));
}

void circle_overlap(std::span<const double> frac_shift, double offset, double len_a,
                    double len_b, std::span<double> out) {
  const std::size_t count = frac_shift.size();
  const __m256d off = _mm256_set1_pd(offset);
  const __m256d la = _mm256_set1_pd(len_a);
  const __m256d lb = _mm256_set1_pd(len_b);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d s = _mm256_sub_pd(off, _mm256_loadu_pd(frac_shift.data() + i));
    s = _mm256_sub_pd(s, _mm256_floor_pd(s));
    s = wrap_unit(s, one);
    const __m256d end = _mm256_add_pd(s, lb);
    const __m256d first = _mm256_max_pd(_mm256_sub_pd(_mm256_min_pd(la, end), s), zero);
    const __m256d second = _mm256_max_pd(_mm256_min_pd(la, _mm256_sub_pd(end, one)), zero);
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(first, second));
  }
  if (i < count) scalar::circle_overlap(frac_shift.subspan(i), offset, len_a, len_b, out.subspan(i));
}

}  // namespace bgap::kernels::avx2
