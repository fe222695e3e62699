#include <immintrin.h>

#include "schwinger/kernels.hpp"

namespace schwinger::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a.subspan(r * cols, cols), x);
}

// Four independent Neumaier lanes, merged with a scalar compensated pass.
double compensated_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d big = _mm256_cmp_pd(_mm256_and_pd(sum, kAbsMask), _mm256_and_pd(v, kAbsMask), _CMP_GE_OQ);
    const __m256d when_big = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d when_small = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_small, when_big, big));
    sum = t;
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, sum);
  _mm256_store_pd(c, comp);
  CompensatedSum<double> acc;
  for (int k = 0; k < 4; ++k) acc.add(s[k]);
  for (int k = 0; k < 4; ++k) acc.add(c[k]);
  for (; i < n; ++i) acc.add(x[i]);
  return acc.value();
}

}  // namespace schwinger::kernels::avx2
