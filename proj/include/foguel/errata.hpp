#pragma once

// Formulas as they are commonly printed, kept only so the regression suite
// can show that substituting them breaks the verified constructions.

#include "foguel/matrix_kernel.hpp"
#include "foguel/operator_models.hpp"
#include "foguel/spectral.hpp"

namespace foguel::errata {

// A with leading coefficient λ/(λ − 1) instead of (λ − 1)/λ; X and B follow
// from A as usual.
ResolventBlocks resolvent_blocks_printed_coefficient(const FoguelOperator& f,
                                                     double lambda);

// [[A, (I − AA*)^{1/2}], [(I − A*A)^{1/2}, +A*]]
ComplexMatrix dilation_with_plus_sign(const ComplexMatrix& a);

// ‖R_T R_T* · [[V, −VTV*], [0, V*]] − I‖: the block matrix read as an
// inverse of the Gram operator rather than of R_T.
double block_inverse_as_gram_inverse_residual(const FoguelOperator& f);

}  // namespace foguel::errata
