#pragma once

// Generalized Foguel operators R = [[A*, T], [0, A]] with a contraction A.
//
// The unitary dilation V_A of A turns R into a compression of the genuine
// Foguel operator W = [[V_A*, T̃], [0, V_A]], which bounds ‖R‖ by Φ(‖T‖).
// The same bound, fed through the block calculus of R^n and p(R), gives
// ‖p(R)‖ ≤ Φ(‖p̃′‖_∞ ‖T‖) for polynomials with ‖p‖_∞ ≤ 1 on the disk.

#include <cstddef>
#include <vector>

#include "foguel/matrix_kernel.hpp"

namespace foguel {

class Polynomial {
 public:
  Polynomial() = default;
  // Trailing zero coefficients are dropped.
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial monomial(int degree, cplx coeff = 1.0);

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  cplx operator()(cplx z) const;  // Horner
  // |a_0| + |a_1| z + ... + |a_m| z^m
  Polynomial tilde() const;
  Polynomial derivative() const;
  Polynomial scaled(double factor) const;

 private:
  std::vector<cplx> coeffs_;
};

inline constexpr std::size_t kDiskSamples = 4096;

// max |p(z)| over `samples` equally spaced points of the unit circle. By the
// maximum-modulus principle this estimates the sup over the closed disk.
double disk_sup_norm(const Polynomial& p, std::size_t samples = kDiskSamples);

// ‖p̃′‖_∞ = Σ j |a_j|; a polynomial with non-negative coefficients peaks on
// the closed disk at z = 1.
double tilde_deriv_bound(const Polynomial& p);

inline constexpr double kContractionTolerance = 1e-10;

// [[A, (I − AA*)^{1/2}], [(I − A*A)^{1/2}, −A*]], unitary for ‖A‖ ≤ 1.
// Throws ErrorCode::not_contraction (value = ‖A‖) beyond 1 + 1e-10.
ComplexMatrix halmos_dilation(const ComplexMatrix& a);

// ‖U*U − I‖ and ‖UU* − I‖, whichever is larger.
double unitarity_defect(const ComplexMatrix& u);

struct DilationLift {
  ComplexMatrix a;       // n x n contraction
  ComplexMatrix va;      // 2n x 2n unitary dilation
  ComplexMatrix ttilde;  // 2n x 2n, T in block (1, 2)
  ComplexMatrix w;       // 4n x 4n Foguel operator [[VA*, T̃], [0, VA]]
};

DilationLift lift_foguel(const ComplexMatrix& a, const ComplexMatrix& t);

// [[A*, T], [0, A]]
ComplexMatrix generalized_foguel(const ComplexMatrix& a, const ComplexMatrix& t);

struct CompressionReport {
  ComplexMatrix r;
  double norm_r = 0.0;
  double norm_w = 0.0;
  double closed_form = 0.0;  // Φ(‖T‖)
  double symbol_norm = 0.0;
  bool holds = false;  // ‖R‖ ≤ ‖W‖ + 1e-10 and ‖R‖ ≤ Φ(‖T‖) + 1e-8

  double slack() const noexcept { return closed_form - norm_r; }
};

CompressionReport compress_generalized(const ComplexMatrix& a,
                                       const ComplexMatrix& t);

// D_n(A, T) = Σ_{j=0}^{n-1} (A*)^j T A^{n-1-j}. Throws ErrorCode::domain for
// n < 1.
ComplexMatrix power_offdiag(const ComplexMatrix& a, const ComplexMatrix& t,
                            int n);

struct BlockCalculus {
  ComplexMatrix matrix;    // block formula
  double deviation = 0.0;  // ‖block formula − direct evaluation‖
  double scale = 1.0;      // tolerance scale used by the self-check
};

// R^n = [[(A*)^n, D_n], [0, A^n]], checked against repeated multiplication
// within 1e-9 (1 + ‖R‖)^n. Throws ErrorCode::internal_consistency on
// disagreement.
BlockCalculus foguel_power(const ComplexMatrix& a, const ComplexMatrix& t, int n);

// p(R) = [[Σ a_j (A*)^j, Σ_{j≥1} a_j D_j], [0, p(A)]], checked against
// Σ a_j R^j within 1e-9 Σ |a_j| (1 + ‖R‖)^j.
BlockCalculus poly_apply(const Polynomial& p, const ComplexMatrix& a,
                         const ComplexMatrix& t);

struct PolyBoundReport {
  double sup_norm = 0.0;        // sampled ‖p‖_∞
  double tilde_deriv = 0.0;     // ‖p̃′‖_∞
  double symbol_norm = 0.0;     // ‖T‖
  double norm_poly_r = 0.0;     // ‖p(R)‖
  double bound = 0.0;           // Φ(‖p̃′‖_∞ ‖T‖)
  // ‖Σ a_j D_j‖ ≤ ‖T‖ Σ j|a_j| ‖A‖^{j-1} ≤ ‖T‖ ‖p̃′‖_∞
  double offdiag_norm = 0.0;
  double offdiag_chain_middle = 0.0;
  double offdiag_chain_upper = 0.0;
  bool holds = false;

  double slack() const noexcept { return bound - norm_poly_r; }
};

// Throws ErrorCode::domain when the sampled sup norm exceeds 1 + 1e-10 and
// ErrorCode::not_contraction when ‖A‖ > 1 + 1e-10.
PolyBoundReport verify_poly_bound(const Polynomial& p, const ComplexMatrix& a,
                                  const ComplexMatrix& t);

}  // namespace foguel
