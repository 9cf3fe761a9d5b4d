#include "foguel/simd/kernels.hpp"

namespace foguel::simd::detail {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 const cplx* b, cplx* c) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t j = 0; j < n; ++j) {
    double* ccol = cd + 2 * j * m;
    for (std::size_t i = 0; i < 2 * m; ++i) ccol[i] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double br = bd[2 * (p + j * k)];
      const double bi = bd[2 * (p + j * k) + 1];
      const double* acol = ad + 2 * p * m;
      for (std::size_t i = 0; i < m; ++i) {
        const double ar = acol[2 * i];
        const double ai = acol[2 * i + 1];
        ccol[2 * i] += ar * br - ai * bi;
        ccol[2 * i + 1] += ai * br + ar * bi;
      }
    }
  }
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const double alr = alpha.real();
  const double ali = alpha.imag();
  for (std::size_t i = 0; i < len; ++i) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    yd[2 * i] += xr * alr - xi * ali;
    yd[2 * i + 1] += xi * alr + xr * ali;
  }
}

double max_sq_diff_scalar(std::size_t len, const cplx* a, const cplx* b) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double dr = ad[2 * i] - bd[2 * i];
    const double di = ad[2 * i + 1] - bd[2 * i + 1];
    const double sq = dr * dr + di * di;
    if (sq > best) best = sq;
  }
  return best;
}

double max_sq_dev_identity_scalar(std::size_t n, const cplx* m) {
  const double* md = reinterpret_cast<const double*>(m);
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dr = md[2 * (i + j * n)] - (i == j ? 1.0 : 0.0);
      const double di = md[2 * (i + j * n) + 1];
      const double sq = dr * dr + di * di;
      if (sq > best) best = sq;
    }
  }
  return best;
}

}  // namespace foguel::simd::detail
