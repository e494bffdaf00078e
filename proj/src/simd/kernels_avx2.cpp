#include "star/simd/kernels.hpp"

#if STAR_SIMD_HAVE_AVX2

#include <immintrin.h>

namespace star::simd::avx2 {

namespace {

inline double hsum(__m256d v) noexcept {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double sum(std::span<const double> xs) noexcept {
  const std::size_t n = xs.size();
  const double* p = xs.data();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += p[i];
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  double total = hsum(acc);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void scale(std::span<double> xs, double factor) noexcept {
  const std::size_t n = xs.size();
  double* p = xs.data();
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), f));
  for (; i < n; ++i) p[i] *= factor;
}

// Four query points per lane group; the edge loop is the inner loop. The
// arithmetic mirrors the scalar expression operation for operation so the
// two paths agree exactly.
void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept {
  const std::size_t n = px.size();
  const std::size_t edges = ring_x.size() > 0 ? ring_x.size() - 1 : 0;
  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d qx = _mm256_loadu_pd(px.data() + p);
    const __m256d qy = _mm256_loadu_pd(py.data() + p);
    __m256d parity = _mm256_setzero_pd();
    for (std::size_t e = 0; e < edges; ++e) {
      const __m256d xi = _mm256_set1_pd(ring_x[e]);
      const __m256d yi = _mm256_set1_pd(ring_y[e]);
      const __m256d xj = _mm256_set1_pd(ring_x[e + 1]);
      const __m256d yj = _mm256_set1_pd(ring_y[e + 1]);
      const __m256d above_i = _mm256_cmp_pd(yi, qy, _CMP_GT_OQ);
      const __m256d above_j = _mm256_cmp_pd(yj, qy, _CMP_GT_OQ);
      const __m256d straddles = _mm256_xor_pd(above_i, above_j);
      const __m256d xint = _mm256_add_pd(
          _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(xj, xi), _mm256_sub_pd(qy, yi)), _mm256_sub_pd(yj, yi)), xi);
      const __m256d left = _mm256_cmp_pd(qx, xint, _CMP_LT_OQ);
      parity = _mm256_xor_pd(parity, _mm256_and_pd(straddles, left));
    }
    const int mask = _mm256_movemask_pd(parity);
    for (int k = 0; k < 4; ++k) out[p + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((mask >> k) & 1);
  }
  if (p < n)
    scalar::ring_crossing_parity(px.subspan(p), py.subspan(p), ring_x, ring_y, out.subspan(p));
}

}  // namespace star::simd::avx2

#endif
