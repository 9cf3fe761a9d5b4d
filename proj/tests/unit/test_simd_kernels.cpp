#include <random>
#include <vector>

#include "doctest.h"
#include "foguel/simd/kernels.hpp"
#include "test_support.hpp"

using foguel::ComplexMatrix;
using foguel::simd::cplx;
namespace simd = foguel::simd;

namespace {

std::vector<const simd::KernelTable*> available_tables() {
  std::vector<const simd::KernelTable*> tables{&simd::scalar_kernels()};
  if (const simd::KernelTable* avx = simd::avx2_kernels()) tables.push_back(avx);
  return tables;
}

ComplexMatrix run_gemm(const simd::KernelTable& k, const ComplexMatrix& a,
                       const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  k.gemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(), c.data());
  return c;
}

}  // namespace

TEST_CASE("every kernel set matches the naive product on ragged shapes") {
  std::mt19937_64 rng(11);
  const int shapes[][3] = {{1, 1, 1}, {2, 3, 1}, {3, 3, 3}, {5, 7, 2},
                           {8, 8, 8}, {9, 4, 13}, {33, 17, 31}};
  for (const simd::KernelTable* k : available_tables()) {
    CAPTURE(simd::to_string(k->isa));
    for (const auto& s : shapes) {
      const ComplexMatrix a = foguel::testing::random_matrix(s[0], s[2], rng);
      const ComplexMatrix b = foguel::testing::random_matrix(s[2], s[1], rng);
      const ComplexMatrix expect = foguel::testing::naive_product(a, b);
      const ComplexMatrix got = run_gemm(*k, a, b);
      CHECK((got - expect).cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + s[2]));
    }
  }
}

TEST_CASE("AVX2 and scalar kernels agree") {
  const simd::KernelTable* avx = simd::avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  const simd::KernelTable& ref = simd::scalar_kernels();
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3, 7, 16, 31, 64}) {
    CAPTURE(n);
    const ComplexMatrix a = foguel::testing::random_matrix(n, n, rng);
    const ComplexMatrix b = foguel::testing::random_matrix(n, n, rng);
    const ComplexMatrix c_ref = run_gemm(ref, a, b);
    const ComplexMatrix c_avx = run_gemm(*avx, a, b);
    CHECK((c_ref - c_avx).cwiseAbs().maxCoeff() <= 1e-13 * n);

    // max reductions involve no rounding, so both paths agree bit for bit
    CHECK(ref.max_sq_diff(a.size(), a.data(), b.data()) ==
          avx->max_sq_diff(a.size(), a.data(), b.data()));
    CHECK(ref.max_sq_dev_identity(n, a.data()) ==
          avx->max_sq_dev_identity(n, a.data()));

    ComplexMatrix y_ref = b;
    ComplexMatrix y_avx = b;
    const cplx alpha(0.3, -1.7);
    ref.axpy(a.size(), alpha, a.data(), y_ref.data());
    avx->axpy(a.size(), alpha, a.data(), y_avx.data());
    CHECK((y_ref - y_avx).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("identity deviation kernel sees the diagonal") {
  for (const simd::KernelTable* k : available_tables()) {
    CAPTURE(simd::to_string(k->isa));
    for (int n : {1, 2, 3, 5}) {
      ComplexMatrix m = ComplexMatrix::Identity(n, n);
      CHECK(k->max_sq_dev_identity(n, m.data()) == 0.0);
      m(n - 1, n - 1) = cplx(1.0, 0.5);
      CHECK(k->max_sq_dev_identity(n, m.data()) == doctest::Approx(0.25));
      m(n - 1, n - 1) = 1.0;
      m(0, n - 1) += cplx(0.0, n > 1 ? 2.0 : 0.0);
      CHECK(k->max_sq_dev_identity(n, m.data()) == (n > 1 ? 4.0 : 0.0));
    }
  }
}

TEST_CASE("max_abs_diff wrapper rejects mismatched lengths") {
  std::vector<cplx> a(3), b(4);
  CHECK_THROWS(simd::max_abs_diff(a, b));
}

TEST_CASE("FOGUEL_SIMD names a known kernel set") {
  const auto isa = simd::active_isa();
  CHECK((isa == simd::Isa::scalar || isa == simd::Isa::avx2));
}
