#pragma once

// Data-parallel inner loops behind the dense complex matrix layer.
//
// Each kernel exists as a portable scalar reference and as an AVX2/FMA
// variant. The variant is chosen once at runtime from CPUID; setting
// FOGUEL_SIMD=scalar in the environment forces the reference path. All
// matrices are column-major with leading dimension equal to the row count,
// which is Eigen's default storage for MatrixXcd.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace foguel::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // C (m x n) = A (m x k) * B (k x n); C is overwritten and must not alias.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c);
  // y += alpha * x
  void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
  // max_i |a_i - b_i|^2
  double (*max_sq_diff)(std::size_t len, const cplx* a, const cplx* b);
  // max |M - I|^2 over the entries of a square n x n matrix
  double (*max_sq_dev_identity)(std::size_t n, const cplx* m);
};

const KernelTable& scalar_kernels();

// Null when the running CPU (or the build target) lacks the instruction set.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();
Isa active_isa();

// Convenience wrappers over active_kernels().
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

namespace detail {
void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 const cplx* b, cplx* c);
void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y);
double max_sq_diff_scalar(std::size_t len, const cplx* a, const cplx* b);
double max_sq_dev_identity_scalar(std::size_t n, const cplx* m);

#if defined(__x86_64__) || defined(_M_X64)
#define FOGUEL_HAVE_AVX2_KERNELS 1
void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c);
void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y);
double max_sq_diff_avx2(std::size_t len, const cplx* a, const cplx* b);
double max_sq_dev_identity_avx2(std::size_t n, const cplx* m);
#endif
}  // namespace detail

}  // namespace foguel::simd
