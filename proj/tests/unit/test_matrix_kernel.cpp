#include <cmath>
#include <random>

#include "doctest.h"
#include "foguel/error.hpp"
#include "foguel/matrix_kernel.hpp"
#include "test_support.hpp"

using namespace foguel;
using foguel::testing::random_matrix;
using foguel::testing::random_unitary;

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected foguel::Error");
  return ErrorCode::usage;
}

}  // namespace

TEST_CASE("Tolerance rejects degenerate settings") {
  CHECK_NOTHROW(Tolerance(1e-8));
  CHECK_NOTHROW(Tolerance(0.0, 1e-6));
  CHECK(code_of([] { Tolerance(0.0, 0.0); }) == ErrorCode::domain);
  CHECK(code_of([] { Tolerance(-1.0); }) == ErrorCode::domain);
  CHECK(code_of([] { Tolerance(std::nan("")); }) == ErrorCode::domain);
  CHECK(Tolerance(1e-3, 0.1).allowed(2.0, -5.0) == doctest::Approx(0.501));
}

TEST_CASE("multiply matches an independent triple loop") {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = random_matrix(6, 4, rng);
  const ComplexMatrix b = random_matrix(4, 9, rng);
  CHECK(max_abs_diff(multiply(a, b), foguel::testing::naive_product(a, b)) <= 1e-13);
  CHECK(code_of([&] { multiply(a, a); }) == ErrorCode::dimension);
}

TEST_CASE("hermitian_eigs examples") {
  SUBCASE("identity") {
    const HermitianEigen e = hermitian_eigs(identity(2));
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
  }
  SUBCASE("[[1+t^2, t], [t, 1]] with t = 1") {
    ComplexMatrix m(2, 2);
    m << 2.0, 1.0, 1.0, 1.0;
    const auto [lo, hi] = foguel::testing::symmetric_2x2_eigs(2.0, 1.0, 1.0);
    // frozen from the characteristic polynomial: (3 ∓ √5)/2
    CHECK(lo == doctest::Approx(0.3819660112501051).epsilon(1e-15));
    CHECK(hi == doctest::Approx(2.618033988749895).epsilon(1e-15));
    const RealVector ev = hermitian_eigenvalues(m);
    CHECK(std::abs(ev(0) - lo) <= 1e-14);
    CHECK(std::abs(ev(1) - hi) <= 1e-14);
  }
  SUBCASE("conjugated diag(4, 2, 0)") {
    std::mt19937_64 rng(42);
    const ComplexMatrix u = random_unitary(3, rng);
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 4.0;
    d(1, 1) = 2.0;
    const ComplexMatrix m = u * d * u.adjoint();
    const RealVector ev = hermitian_eigenvalues(m);
    CHECK(std::abs(ev(0) - 0.0) <= 1e-13);
    CHECK(std::abs(ev(1) - 2.0) <= 1e-13);
    CHECK(std::abs(ev(2) - 4.0) <= 1e-13);
  }
}

TEST_CASE("hermitian_eigs rejects non-Hermitian input with the asymmetry") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 0.5, 1.0;
  try {
    hermitian_eigs(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_hermitian);
    CHECK(e.value() == doctest::Approx(1.5));
  }
}

TEST_CASE("hermitian_eigs reconstruction and trace over random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 1 + trial % 24;
    const ComplexMatrix m = random_hermitian(n, rng);
    const HermitianEigen e = hermitian_eigs(m);
    const double scale = 1.0 + foguel::testing::jacobi_norm(m);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(e.values(i - 1) <= e.values(i));
    const ComplexMatrix rebuilt =
        e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    CHECK(foguel::testing::jacobi_norm(m - rebuilt) <= 1e-10 * scale);
    CHECK(std::abs(m.trace().real() - e.values.sum()) <= 1e-9 * scale);
    CHECK(foguel::testing::jacobi_norm(e.vectors.adjoint() * e.vectors -
                                       identity(n)) <= 1e-12);
  }
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  ComplexMatrix jordan(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  // sqrt of the top eigenvalue of [[2,1],[1,1]]
  const double golden = std::sqrt(foguel::testing::symmetric_2x2_eigs(2.0, 1.0, 1.0).second);
  CHECK(golden == doctest::Approx(1.6180339887498949).epsilon(1e-15));
  CHECK(std::abs(operator_norm(jordan) - golden) <= 1e-14);

  std::mt19937_64 rng(3);
  for (int n : {1, 4, 17}) {
    CHECK(std::abs(operator_norm(random_unitary(n, rng)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("operator_norm is adjoint- and unitarily invariant") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial;
    const ComplexMatrix m = random_matrix(n, n, rng);
    const double norm = operator_norm(m);
    CHECK(std::abs(norm - operator_norm(m.adjoint())) <= 1e-12 * (1.0 + norm));
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix w = random_unitary(n, rng);
    CHECK(std::abs(operator_norm(u * m * w) - norm) <= 1e-10);
    CHECK(std::abs(norm - foguel::testing::jacobi_norm(m)) <= 1e-12 * norm);
  }
}

TEST_CASE("psd_sqrt examples") {
  CHECK(max_abs_diff(psd_sqrt(identity(3)), identity(3)) <= 1e-14);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const ComplexMatrix r = psd_sqrt(d);
  CHECK(std::abs(r(0, 0) - 2.0) <= 1e-14);
  CHECK(std::abs(r(1, 1) - 3.0) <= 1e-14);
  CHECK(std::abs(r(0, 1)) <= 1e-14);

  ComplexMatrix defect(1, 1);
  defect(0, 0) = 1.0 - 0.25;  // I - AA* for A = 0.5
  CHECK(std::abs(psd_sqrt(defect)(0, 0) - 0.8660254037844386) <= 1e-15);
}

TEST_CASE("psd_sqrt clamps rounding negatives and rejects real negatives") {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  p(1, 1) = -5e-11;
  CHECK(std::abs(psd_sqrt(p)(1, 1)) == 0.0);
  p(1, 1) = -1e-6;
  try {
    psd_sqrt(p);
    FAIL("expected not_psd");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_psd);
    CHECK(e.value() == doctest::Approx(-1e-6));
  }
}

TEST_CASE("psd_sqrt squares back and commutes with conjugation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 12;
    const ComplexMatrix g = random_matrix(n, n, rng);
    const ComplexMatrix p = g * g.adjoint();
    const double scale = 1.0 + foguel::testing::jacobi_norm(p);
    const ComplexMatrix r = psd_sqrt(p);
    CHECK(foguel::testing::jacobi_norm(r * r - p) <= 1e-9 * scale);
    CHECK(hermitian_asymmetry(r) <= 1e-12 * scale);
    CHECK(min_eigenvalue(r) >= -1e-10);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix lhs = psd_sqrt(u * p * u.adjoint());
    CHECK(foguel::testing::jacobi_norm(lhs - u * r * u.adjoint()) <= 1e-9 * scale);
  }
}

TEST_CASE("solve_inverse examples") {
  ComplexMatrix m(2, 2);
  m << -2.0, 1.0, 1.0, -3.0;
  // adjugate over determinant (det = 5)
  ComplexMatrix expect(2, 2);
  expect << -0.6, -0.2, -0.2, -0.4;
  CHECK(max_abs_diff(solve_inverse(m), expect) <= 1e-15);
  CHECK(max_abs_diff(solve_inverse(identity(3)), identity(3)) == 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const ComplexMatrix inv = solve_inverse(d);
  CHECK(inv(0, 0) == cplx(0.5));
  CHECK(inv(1, 1) == cplx(0.25));
}

TEST_CASE("solve_inverse is a two-sided inverse and flags singular input") {
  std::mt19937_64 rng(17);
  for (int n : {1, 3, 8, 20}) {
    const ComplexMatrix m = random_matrix(n, n, rng);
    const ComplexMatrix inv = solve_inverse(m);
    const double bound =
        1e3 * n * std::numeric_limits<double>::epsilon() * condition_number(m);
    CHECK(operator_norm(multiply(m, inv) - identity(n)) <= bound);
    CHECK(operator_norm(multiply(inv, m) - identity(n)) <= bound);
  }
  ComplexMatrix singular(2, 2);
  singular << 1.0, 2.0, 2.0, 4.0;
  try {
    solve_inverse(singular);
    FAIL("expected singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
    CHECK(e.value() > 1e12);
  }
}

TEST_CASE("multiset_match examples") {
  const Tolerance tol(1e-12);
  const MultisetMatch perm = multiset_match({1, 2, 3}, {3, 1, 2}, tol);
  CHECK(perm.matched);
  CHECK(perm.max_deviation == 0.0);

  const double lo = (3.0 - std::sqrt(5.0)) / 2.0;
  const double hi = (3.0 + std::sqrt(5.0)) / 2.0;
  const MultisetMatch quad =
      multiset_match({0.381966, 2.618034}, {lo, hi}, Tolerance(1e-6));
  CHECK(quad.matched);
  CHECK(quad.max_deviation <= 1e-6);

  CHECK(code_of([&] { multiset_match({1, 2}, {1, 2, 3}, tol); }) ==
        ErrorCode::length_mismatch);

  const MultisetMatch off = multiset_match({1.0, 2.0}, {1.0, 2.1}, tol);
  CHECK_FALSE(off.matched);
  CHECK(off.worst_index == 1);
}
