#pragma once

// Spectrum and norm of a Foguel operator with unitary isometry slot.
//
// For λ > 0, λ ≠ 1, λ is an eigenvalue of R_T R_T* exactly when
// f(λ) = (λ − 1)² / λ is an eigenvalue of TT*. Each μ ∈ spec(TT*) therefore
// contributes the reciprocal pair of roots of λ² − (μ + 2)λ + 1 = 0, and
// the norm of R_T is Φ(‖T‖) = (‖T‖ + √(‖T‖² + 4)) / 2.

#include <vector>

#include "foguel/matrix_kernel.hpp"
#include "foguel/operator_models.hpp"

namespace foguel {

// (λ − 1)² / λ. Throws ErrorCode::domain for λ ≤ 0.
double forward_map(double lambda);

struct BranchPair {
  double minus;  // in (0, 1]
  double plus;   // in [1, ∞)
};

// Both positive preimages of μ ≥ 0 under forward_map.
BranchPair inverse_branches(double mu);

// Φ(t) = (t + √(t² + 4)) / 2.
double foguel_norm_closed(double symbol_norm);
// Ψ(r) = (r² − 1) / r, the inverse of Φ on [1, ∞).
double symbol_norm_from_foguel(double foguel_norm);

struct SpectralMapReport {
  std::vector<double> gram_spectrum;         // 2n values, ascending
  std::vector<double> symbol_gram_spectrum;  // n values, ascending
  std::vector<double> predicted_spectrum;    // 2n values, ascending
  double max_deviation = 0.0;
  double max_branch_product_error = 0.0;  // max |λ−·λ+ − 1|
  bool matched = false;
};

// Requires an isometric V (ErrorCode::not_isometry otherwise).
SpectralMapReport verify_spectral_mapping(const FoguelOperator& f,
                                          const Tolerance& tol);

// S = [[A, X], [X*, B]] inverting R_T R_T* − λI.
struct ResolventBlocks {
  double lambda = 0.0;
  ComplexMatrix a;
  ComplexMatrix x;
  ComplexMatrix b;
  double residual = 0.0;      // ‖(R_T R_T* − λI) S − I‖
  double cross_residual = 0.0;  // ‖T*A − (λ − 1) V*X*‖
  double spectral_gap = 0.0;  // dist(f(λ), spec(TT*))

  ComplexMatrix assemble() const;
};

inline constexpr double kDefaultSpectralGap = 1e-6;
inline constexpr double kLambdaExclusion = 1e-6;

// A = ((λ − 1)/λ)(TT* − f(λ)I)⁻¹, X = A T V*/(λ − 1),
// B = (V T* X − V V*)/(λ − 1).
//
// Throws ErrorCode::domain when λ < 1e-6 or |λ − 1| < 1e-6, and
// ErrorCode::near_singular (value = gap) when f(λ) lies within min_gap of
// spec(TT*).
ResolventBlocks resolvent_blocks(const FoguelOperator& f, double lambda,
                                 double min_gap = kDefaultSpectralGap);

struct FoguelInverse {
  ComplexMatrix inverse;       // [[V, −V T V*], [0, V*]] = R_T⁻¹
  ComplexMatrix gram_inverse;  // (R_T⁻¹)* R_T⁻¹ = (R_T R_T*)⁻¹
  double residual = 0.0;       // ‖R_T · inverse − I‖
  double gram_residual = 0.0;  // ‖R_T R_T* · gram_inverse − I‖
};

// Throws ErrorCode::not_isometry unless V is unitary.
FoguelInverse foguel_inverse(const FoguelOperator& f);

struct GramMinusIdentityInverse {
  ComplexMatrix inverse;  // [[0, X], [X*, −I]]
  ComplexMatrix x;        // (T⁻¹)* V*
  double residual = 0.0;  // ‖(R_T R_T* − I) · inverse − I‖
  double symbol_condition = 0.0;
};

inline constexpr double kDefaultConditionCeiling = 1e12;

// R_T R_T* − I is invertible exactly when T is. Throws ErrorCode::singular
// (value = cond(T)) when cond(T) exceeds the ceiling.
GramMinusIdentityInverse gram_minus_identity_inverse(
    const FoguelOperator& f, double condition_ceiling = kDefaultConditionCeiling);

namespace detail {
// Shared by the corrected construction and the errata regression, which
// swaps the leading coefficient of A.
ResolventBlocks resolvent_blocks_with_coefficient(const FoguelOperator& f,
                                                  double lambda, double min_gap,
                                                  double a_coefficient);
}  // namespace detail

}  // namespace foguel
