// Compiled with -mavx2 -mfma. Only plain double arithmetic and intrinsics
// appear here so that no inline library code built for AVX2 can be merged
// into the scalar path at link time.

#include "foguel/simd/kernels.hpp"

#if defined(FOGUEL_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace foguel::simd::detail {

namespace {

// Two complex products a*b packed as [re0, im0, re1, im1].
inline __m256d cmul_acc(__m256d acc, __m256d a, __m256d br, __m256d bi) {
  const __m256d swapped = _mm256_permute_pd(a, 0b0101);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(swapped, bi)));
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  double best = lanes[0];
  for (int i = 1; i < 4; ++i)
    if (lanes[i] > best) best = lanes[i];
  return best;
}

}  // namespace

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  const std::size_t m2 = m & ~std::size_t{1};
  for (std::size_t j = 0; j < n; ++j) {
    double* ccol = cd + 2 * j * m;
    for (std::size_t i = 0; i < 2 * m; ++i) ccol[i] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double br = bd[2 * (p + j * k)];
      const double bi = bd[2 * (p + j * k) + 1];
      const __m256d vbr = _mm256_set1_pd(br);
      const __m256d vbi = _mm256_set1_pd(bi);
      const double* acol = ad + 2 * p * m;
      std::size_t i = 0;
      for (; i + 4 <= m; i += 4) {
        __m256d c0 = _mm256_loadu_pd(ccol + 2 * i);
        __m256d c1 = _mm256_loadu_pd(ccol + 2 * i + 4);
        c0 = cmul_acc(c0, _mm256_loadu_pd(acol + 2 * i), vbr, vbi);
        c1 = cmul_acc(c1, _mm256_loadu_pd(acol + 2 * i + 4), vbr, vbi);
        _mm256_storeu_pd(ccol + 2 * i, c0);
        _mm256_storeu_pd(ccol + 2 * i + 4, c1);
      }
      for (; i < m2; i += 2) {
        __m256d c0 = _mm256_loadu_pd(ccol + 2 * i);
        c0 = cmul_acc(c0, _mm256_loadu_pd(acol + 2 * i), vbr, vbi);
        _mm256_storeu_pd(ccol + 2 * i, c0);
      }
      if (m2 != m) {
        const double ar = acol[2 * m2];
        const double ai = acol[2 * m2 + 1];
        ccol[2 * m2] += ar * br - ai * bi;
        ccol[2 * m2 + 1] += ai * br + ar * bi;
      }
    }
  }
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const double* al = reinterpret_cast<const double*>(&alpha);
  const double alr = al[0];
  const double ali = al[1];
  const __m256d vr = _mm256_set1_pd(alr);
  const __m256d vi = _mm256_set1_pd(ali);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    __m256d acc = _mm256_loadu_pd(yd + 2 * i);
    acc = cmul_acc(acc, _mm256_loadu_pd(xd + 2 * i), vr, vi);
    _mm256_storeu_pd(yd + 2 * i, acc);
  }
  if (i < len) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    yd[2 * i] += xr * alr - xi * ali;
    yd[2 * i + 1] += xi * alr + xr * ali;
  }
}

double max_sq_diff_avx2(std::size_t len, const cplx* a, const cplx* b) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ad + 2 * i),
                                    _mm256_loadu_pd(bd + 2 * i));
    const __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  double out = hmax(best);
  if (i < len) {
    const double dr = ad[2 * i] - bd[2 * i];
    const double di = ad[2 * i + 1] - bd[2 * i + 1];
    const double sq = dr * dr + di * di;
    if (sq > out) out = sq;
  }
  return out;
}

double max_sq_dev_identity_avx2(std::size_t n, const cplx* m) {
  const double* md = reinterpret_cast<const double*>(m);
  __m256d best = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double* col = md + 2 * j * n;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      // Identity entries for this pair: only the real lane on the diagonal.
      const __m256d eye = _mm256_set_pd(0.0, i + 1 == j ? 1.0 : 0.0, 0.0,
                                        i == j ? 1.0 : 0.0);
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(col + 2 * i), eye);
      const __m256d sq = _mm256_mul_pd(d, d);
      best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
    }
    if (i < n) {
      const double dr = col[2 * i] - (i == j ? 1.0 : 0.0);
      const double di = col[2 * i + 1];
      const double sq = dr * dr + di * di;
      if (sq > tail) tail = sq;
    }
  }
  const double out = hmax(best);
  return out > tail ? out : tail;
}

}  // namespace foguel::simd::detail

#endif
