#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "foguel/simd/kernels.hpp"

namespace foguel::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, detail::gemm_scalar,
                                 detail::axpy_scalar, detail::max_sq_diff_scalar,
                                 detail::max_sq_dev_identity_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(FOGUEL_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{Isa::avx2, detail::gemm_avx2, detail::axpy_avx2,
                                 detail::max_sq_diff_avx2,
                                 detail::max_sq_dev_identity_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("FOGUEL_SIMD")) {
    if (std::string_view(env) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

Isa active_isa() { return active_kernels().isa; }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("max_abs_diff: length mismatch");
  return std::sqrt(active_kernels().max_sq_diff(a.size(), a.data(), b.data()));
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("axpy: length mismatch");
  active_kernels().axpy(x.size(), alpha, x.data(), y.data());
}

}  // namespace foguel::simd
