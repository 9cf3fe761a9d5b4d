#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "foguel/dilation.hpp"
#include "foguel/errata.hpp"
#include "foguel/error.hpp"
#include "foguel/operator_models.hpp"
#include "foguel/spectral.hpp"
#include "test_support.hpp"

using namespace foguel;
using foguel::testing::jacobi_norm;

namespace {

ComplexMatrix scalar(cplx value) { return ComplexMatrix::Constant(1, 1, value); }

// Brute-force p(R) by summing powers computed with the naive product.
ComplexMatrix brute_poly(const Polynomial& p, const ComplexMatrix& r) {
  ComplexMatrix power = ComplexMatrix::Identity(r.rows(), r.cols());
  ComplexMatrix sum = ComplexMatrix::Zero(r.rows(), r.cols());
  for (const cplx& c : p.coeffs()) {
    sum += c * power;
    power = foguel::testing::naive_product(power, r);
  }
  return sum;
}

// max over the circle of |q(z)| by dense sampling, used as an oracle for
// the closed-form Σ j|a_j|.
double sampled_sup(const std::vector<cplx>& coeffs, int samples) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    cplx acc = 0.0, zj = 1.0;
    for (const cplx& c : coeffs) {
      acc += c * zj;
      zj *= z;
    }
    best = std::max(best, std::abs(acc));
  }
  return best;
}

}  // namespace

TEST_CASE("Polynomial basics") {
  const Polynomial p({1.0, -2.0, 3.0, 0.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == cplx(1.0 - 4.0 + 12.0));
  CHECK(p(cplx(0.0, 1.0)) == cplx(-2.0, -2.0));
  CHECK(Polynomial().is_zero());
  CHECK(Polynomial().degree() == -1);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  CHECK(Polynomial::monomial(3).degree() == 3);
  CHECK(Polynomial::monomial(3)(2.0) == cplx(8.0));
  CHECK_THROWS_AS(Polynomial::monomial(-1), Error);

  const Polynomial d = p.derivative();
  REQUIRE(d.degree() == 1);
  CHECK(d.coeffs()[0] == cplx(-2.0));
  CHECK(d.coeffs()[1] == cplx(6.0));
  CHECK(Polynomial({5.0}).derivative().is_zero());

  const Polynomial t = Polynomial({cplx(0.0, -1.0), cplx(3.0, 4.0)}).tilde();
  CHECK(t.coeffs()[0] == cplx(1.0));
  CHECK(t.coeffs()[1] == cplx(5.0));
  CHECK(p.scaled(0.5)(1.0) == cplx(1.0));
}

TEST_CASE("disk_sup_norm examples") {
  CHECK(disk_sup_norm(Polynomial::monomial(5)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(disk_sup_norm(Polynomial({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  // 1 - z² peaks at z = ±i
  CHECK(disk_sup_norm(Polynomial({1.0, 0.0, -1.0})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(disk_sup_norm(Polynomial()) == 0.0);
  CHECK_THROWS_AS(disk_sup_norm(Polynomial::monomial(1), 0), Error);
}

TEST_CASE("tilde_deriv_bound examples") {
  const Polynomial p({1.0, -2.0, 3.0});
  CHECK(tilde_deriv_bound(p) == 8.0);
  CHECK(std::abs(sampled_sup(p.tilde().derivative().coeffs(), 4096) - 8.0) <= 1e-12);
  CHECK(tilde_deriv_bound(Polynomial({7.0})) == 0.0);
  CHECK(tilde_deriv_bound(Polynomial::monomial(4, cplx(0.0, -0.5))) == 2.0);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> c(1 + trial % 9);
    for (cplx& a : c) a = {nd(rng), nd(rng)};
    const Polynomial q(c);
    const double oracle = sampled_sup(q.tilde().derivative().coeffs(), 4096);
    CHECK(std::abs(tilde_deriv_bound(q) - oracle) <= 1e-10 * (1.0 + oracle));
  }
}

TEST_CASE("halmos_dilation examples") {
  SUBCASE("A = 0.5") {
    const ComplexMatrix u = halmos_dilation(scalar(0.5));
    const double s = std::sqrt(0.75);
    ComplexMatrix expect(2, 2);
    expect << 0.5, s, s, -0.5;
    CHECK(max_abs_diff(u, expect) <= 1e-15);
    CHECK(unitarity_defect(u) <= 1e-15);
  }
  SUBCASE("unitary A has zero defect operators") {
    SeededGenerator gen(8, 0);
    const ComplexMatrix a = haar_unitary(3, gen);
    const ComplexMatrix u = halmos_dilation(a);
    CHECK(jacobi_norm(u.topRightCorner(3, 3)) <= 1e-7);
    CHECK(jacobi_norm(u.bottomLeftCorner(3, 3)) <= 1e-7);
    CHECK(max_abs_diff(u.bottomRightCorner(3, 3), -a.adjoint()) == 0.0);
  }
  SUBCASE("A = 0 gives the swap") {
    const ComplexMatrix u = halmos_dilation(ComplexMatrix::Zero(2, 2));
    CHECK(max_abs_diff(u.topRightCorner(2, 2), identity(2)) <= 1e-15);
    CHECK(max_abs_diff(u.bottomLeftCorner(2, 2), identity(2)) <= 1e-15);
    CHECK(unitarity_defect(u) <= 1e-15);
  }
  SUBCASE("non-contraction is rejected with its norm") {
    try {
      halmos_dilation(scalar(1.5));
      FAIL("expected not_contraction");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_contraction);
      CHECK(e.value() == doctest::Approx(1.5));
    }
  }
}

TEST_CASE("dilation blocks are the defect square roots") {
  SeededGenerator gen(14, 0);
  const ComplexMatrix a = 0.7 * haar_unitary(5, gen) * random_contraction(5, gen);
  const ComplexMatrix u = halmos_dilation(a);
  const ComplexMatrix left = psd_sqrt(identity(5) - a * a.adjoint());
  const ComplexMatrix right = psd_sqrt(identity(5) - a.adjoint() * a);
  CHECK(jacobi_norm(u.topRightCorner(5, 5) - left) <= 1e-12);
  CHECK(jacobi_norm(u.bottomLeftCorner(5, 5) - right) <= 1e-12);
}

TEST_CASE("dilation stays unitary with singular values clipped at 1") {
  // Ginibre/√n has top singular values near 2, so several clip to exactly 1
  for (int trial = 0; trial < 50; ++trial) {
    SeededGenerator gen(15, static_cast<std::uint64_t>(trial));
    const ComplexMatrix a = random_contraction(12, gen);
    CHECK(unitarity_defect(halmos_dilation(a)) <= 1e-13);
  }
}

TEST_CASE("plus-sign dilation is not unitary") {
  // [[0.5, s], [s, 0.5]]: the columns have inner product 2 · 0.5 · s = s
  const ComplexMatrix u = errata::dilation_with_plus_sign(scalar(0.5));
  CHECK(std::abs(unitarity_defect(u) - std::sqrt(0.75)) <= 1e-14);
  SeededGenerator gen(4, 0);
  const ComplexMatrix a = random_contraction(6, gen);
  CHECK(unitarity_defect(errata::dilation_with_plus_sign(a)) > 0.1);
}

TEST_CASE("halmos_dilation is unitary over 1000 random contractions") {
  for (int trial = 0; trial < 1000; ++trial) {
    SeededGenerator gen(600, static_cast<std::uint64_t>(trial));
    const ComplexMatrix a = random_contraction(1 + trial % 10, gen);
    const ComplexMatrix u = halmos_dilation(a);
    REQUIRE(jacobi_norm(foguel::testing::naive_product(u.adjoint(), u) -
                        identity(u.rows())) <= 1e-10);
    REQUIRE(max_abs_diff(u.topLeftCorner(a.rows(), a.cols()), a) == 0.0);
  }
}

TEST_CASE("lift_foguel examples") {
  SUBCASE("A = 0, T = 1") {
    const DilationLift lift = lift_foguel(scalar(0.0), scalar(1.0));
    REQUIRE(lift.w.rows() == 4);
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    // VA = VA* = swap, T̃ = e_1 e_2^T
    expect(0, 1) = 1.0;
    expect(1, 0) = 1.0;
    expect(0, 3) = 1.0;
    expect(2, 3) = 1.0;
    expect(3, 2) = 1.0;
    CHECK(max_abs_diff(lift.w, expect) <= 1e-15);
    CHECK(std::abs(jacobi_norm(lift.w) - foguel_norm_closed(1.0)) <= 1e-14);
  }
  SUBCASE("random") {
    SeededGenerator gen(9, 0);
    const ComplexMatrix a = random_contraction(5, gen);
    const ComplexMatrix t = ginibre(5, gen);
    const DilationLift lift = lift_foguel(a, t);
    const double tn = jacobi_norm(t);
    CHECK(std::abs(jacobi_norm(lift.ttilde) - tn) <= 1e-12 * tn);
    CHECK(std::abs(jacobi_norm(lift.w) - foguel_norm_closed(tn)) <= 1e-10 * (1.0 + tn));
    CHECK(unitarity_defect(lift.va) <= 1e-10);
  }
}

TEST_CASE("compress_generalized examples") {
  SUBCASE("A = 0.5, T = 1") {
    const CompressionReport rep = compress_generalized(scalar(0.5), scalar(1.0));
    ComplexMatrix r(2, 2);
    r << 0.5, 1.0, 0.0, 0.5;
    CHECK(max_abs_diff(rep.r, r) == 0.0);
    // RR* = [[1.25, 0.5], [0.5, 0.25]]
    const double oracle = std::sqrt(foguel::testing::symmetric_2x2_eigs(1.25, 0.5, 0.25).second);
    CHECK(oracle == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-15));
    CHECK(std::abs(rep.norm_r - oracle) <= 1e-14);
    CHECK(std::abs(rep.closed_form - 1.6180339887498949) <= 1e-15);
    CHECK(rep.holds);
    CHECK(rep.slack() > 0.4);
  }
  SUBCASE("unitary A attains the bound") {
    SeededGenerator gen(10, 0);
    const ComplexMatrix a = haar_unitary(4, gen);
    const ComplexMatrix t = ginibre(4, gen);
    const CompressionReport rep = compress_generalized(a, t);
    CHECK(rep.holds);
    CHECK(std::abs(rep.slack()) <= 1e-9 * (1.0 + rep.symbol_norm));
  }
  CHECK_THROWS_AS(compress_generalized(scalar(2.0), scalar(1.0)), Error);
  CHECK_THROWS_AS(compress_generalized(identity(2), identity(3)), Error);
}

TEST_CASE("compression bound over random contractions") {
  for (int trial = 0; trial < 300; ++trial) {
    SeededGenerator gen(700, static_cast<std::uint64_t>(trial));
    const Eigen::Index n = 1 + trial % 8;
    const ComplexMatrix a = random_contraction(n, gen);
    const ComplexMatrix t = ginibre(n, gen);
    const CompressionReport rep = compress_generalized(a, t);
    REQUIRE(rep.holds);
    REQUIRE(jacobi_norm(rep.r) <= foguel_norm_closed(jacobi_norm(t)) + 1e-8);
  }
}

TEST_CASE("power_offdiag examples") {
  CHECK(power_offdiag(scalar(1.0), scalar(1.0), 1)(0, 0) == cplx(1.0));
  CHECK(power_offdiag(scalar(1.0), scalar(1.0), 5)(0, 0) == cplx(5.0));
  CHECK(power_offdiag(scalar(0.0), scalar(2.0), 1)(0, 0) == cplx(2.0));
  CHECK(power_offdiag(scalar(0.0), scalar(2.0), 3)(0, 0) == cplx(0.0));
  // a real scalar: D_n = n a^{n-1} t
  CHECK(std::abs(power_offdiag(scalar(0.5), scalar(1.0), 4)(0, 0) - cplx(4.0 * 0.125)) <=
        1e-15);
  CHECK_THROWS_AS(power_offdiag(scalar(0.5), scalar(1.0), 0), Error);
}

TEST_CASE("foguel_power examples") {
  const BlockCalculus cube = foguel_power(scalar(1.0), scalar(1.0), 3);
  ComplexMatrix expect(2, 2);
  expect << 1.0, 3.0, 0.0, 1.0;
  CHECK(max_abs_diff(cube.matrix, expect) == 0.0);
  CHECK(cube.deviation == 0.0);

  SeededGenerator gen(11, 0);
  const ComplexMatrix a = random_contraction(4, gen);
  const ComplexMatrix t = ginibre(4, gen);
  const ComplexMatrix r = generalized_foguel(a, t);
  ComplexMatrix direct = r;
  for (int n = 1; n <= 10; ++n) {
    if (n > 1) direct = foguel::testing::naive_product(direct, r);
    const BlockCalculus b = foguel_power(a, t, n);
    const double scale = std::pow(1.0 + jacobi_norm(r), n);
    CHECK(jacobi_norm(b.matrix - direct) <= 1e-9 * scale);
    const ComplexMatrix d = power_offdiag(a, t, n);
    CHECK(max_abs_diff(b.matrix.topRightCorner(4, 4), d) == 0.0);
  }
}

TEST_CASE("poly_apply examples") {
  SUBCASE("constant") {
    const BlockCalculus c = poly_apply(Polynomial({2.0}), scalar(0.3), scalar(1.0));
    CHECK(max_abs_diff(c.matrix, 2.0 * identity(2)) == 0.0);
  }
  SUBCASE("z on the Jordan block") {
    const BlockCalculus c = poly_apply(Polynomial::monomial(1), scalar(1.0), scalar(1.0));
    ComplexMatrix expect(2, 2);
    expect << 1.0, 1.0, 0.0, 1.0;
    CHECK(max_abs_diff(c.matrix, expect) == 0.0);
  }
  SUBCASE("random against brute force") {
    SeededGenerator gen(12, 0);
    const ComplexMatrix a = random_contraction(3, gen);
    const ComplexMatrix t = ginibre(3, gen);
    std::vector<cplx> coeffs(6);
    for (cplx& c : coeffs) c = gen.complex_normal();
    const Polynomial p(coeffs);
    const BlockCalculus c = poly_apply(p, a, t);
    const ComplexMatrix oracle = brute_poly(p, generalized_foguel(a, t));
    CHECK(jacobi_norm(c.matrix - oracle) <= 1e-10 * c.scale);
    // diagonal blocks are p(A*) and p(A)
    CHECK(jacobi_norm(c.matrix.bottomRightCorner(3, 3) - brute_poly(p, a)) <= 1e-12 * c.scale);
  }
}

TEST_CASE("verify_poly_bound equality fixture") {
  const PolyBoundReport rep =
      verify_poly_bound(Polynomial::monomial(2), scalar(1.0), scalar(1.0));
  const double one_plus_root2 = 1.0 + std::sqrt(2.0);
  CHECK(std::abs(rep.norm_poly_r - one_plus_root2) <= 1e-12);
  CHECK(std::abs(rep.bound - one_plus_root2) <= 1e-12);
  CHECK(rep.tilde_deriv == 2.0);
  CHECK(std::abs(rep.slack()) <= 1e-10);
  CHECK(rep.holds);
}

TEST_CASE("verify_poly_bound rejects bad inputs") {
  try {
    verify_poly_bound(Polynomial({1.0, 1.0}), scalar(0.5), scalar(1.0));
    FAIL("expected domain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
    CHECK(e.value() == doctest::Approx(2.0));
  }
  try {
    verify_poly_bound(Polynomial::monomial(2), scalar(1.1), scalar(1.0));
    FAIL("expected not_contraction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_contraction);
  }
}

TEST_CASE("polynomial bound over random inputs") {
  for (int trial = 0; trial < 100; ++trial) {
    SeededGenerator gen(800, static_cast<std::uint64_t>(trial));
    const Eigen::Index n = 1 + trial % 6;
    const ComplexMatrix a = random_contraction(n, gen);
    const ComplexMatrix t = ginibre(n, gen);
    std::vector<cplx> coeffs(1 + trial % 8);
    for (cplx& c : coeffs) c = gen.complex_normal();
    Polynomial p(coeffs);
    p = p.scaled(1.0 / (disk_sup_norm(p) * (1.0 + 1e-9)));
    const PolyBoundReport rep = verify_poly_bound(p, a, t);
    REQUIRE(rep.holds);
    REQUIRE(rep.offdiag_norm <= rep.symbol_norm * rep.tilde_deriv + 1e-9);
  }
}
