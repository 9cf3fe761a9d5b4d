#pragma once

// Norm of a Foguel operator from positivity alone.
//
// M²I − R_T R_T* is PSD exactly when its Schur complement
// (M²I − V*V − TT*) − TV*(M²I − VV*)⁻¹VT* is. For unitary V the last term
// collapses to TT*/(M² − 1) and the condition reduces to ‖T‖ ≤ (M² − 1)/M.

#include "foguel/matrix_kernel.hpp"
#include "foguel/operator_models.hpp"

namespace foguel {

// P − X Q⁻¹ X* for Hermitian P and positive definite Q. Throws
// ErrorCode::domain when min eig(Q) < 1e-12.
ComplexMatrix schur_complement(const ComplexMatrix& p, const ComplexMatrix& x,
                               const ComplexMatrix& q);

struct PositivityCertificate {
  double m = 0.0;
  ComplexMatrix reduced_matrix;  // n x n Schur complement
  double min_eigenvalue = 0.0;   // of reduced_matrix
  bool positive = false;         // min_eigenvalue ≥ −threshold
  double direct_min_eigenvalue = 0.0;  // of M²I − R_T R_T* (2n x 2n)
  bool direct_positive = false;
  double threshold = 0.0;
  // Both minimum eigenvalues lie within the singular band, where the two
  // verdicts are allowed to differ.
  bool in_singular_band = false;
};

// 1e-10 (1 + M²)
double default_positivity_threshold(double m);
// 1e-9 (1 + M²)
double singular_band(double m);

// Throws ErrorCode::domain for M ≤ 1 + 1e-12 and
// ErrorCode::internal_consistency when the reduced and direct verdicts
// disagree outside the singular band.
PositivityCertificate foguel_positivity(const FoguelOperator& f, double m);
PositivityCertificate foguel_positivity(const FoguelOperator& f, double m,
                                        double threshold);

// T (M⁻² Σ_{j=0}^{k} V(VV*)^j V* / M^{2j}) T*. Throws ErrorCode::domain for
// M ≤ 1 (the series diverges), k < 0, or ‖V‖ > 1 + 1e-10.
ComplexMatrix neumann_eval(const ComplexMatrix& v, const ComplexMatrix& t,
                           double m, int order);

// TT* / (M² − 1), the limit of neumann_eval for unitary V.
ComplexMatrix neumann_closed_form(const ComplexMatrix& t, double m);

// T V* (M²I − VV*)⁻¹ V T*, evaluated with a dense inverse.
ComplexMatrix schur_offdiag_term(const ComplexMatrix& v, const ComplexMatrix& t,
                                 double m);

// ‖T‖² M^{−2(k+2)} / (1 − M⁻²), the tail of the series for unitary V.
double neumann_truncation_bound(double symbol_norm, double m, int order);

struct BisectionResult {
  double norm = 0.0;
  int iterations = 0;
  double lower = 0.0;  // last non-positive M
  double upper = 0.0;  // last positive M
};

inline constexpr int kMaxBisectionIterations = 200;

// inf{M > 1 : positive} by bisection on [1 + 1e-12, Φ(‖T‖) + 1] until the
// bracket is narrower than tol.abs(). T = 0 short-circuits (exactly 1 for
// unitary V). Throws ErrorCode::internal_consistency if the bracket
// endpoints do not straddle the boundary.
BisectionResult norm_by_bisection(const FoguelOperator& f, const Tolerance& tol);

// ‖T‖ ≤ (M² − 1)/M, i.e. t ≤ Ψ(M).
bool scalar_criterion(double symbol_norm, double m);

}  // namespace foguel
