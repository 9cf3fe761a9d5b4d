#include "foguel/errata.hpp"

namespace foguel::errata {

ResolventBlocks resolvent_blocks_printed_coefficient(const FoguelOperator& f,
                                                     double lambda) {
  return detail::resolvent_blocks_with_coefficient(
      f, lambda, kDefaultSpectralGap, lambda / (lambda - 1.0));
}

ComplexMatrix dilation_with_plus_sign(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix a_adj = a.adjoint();
  return block2x2(a, psd_sqrt(identity(n) - multiply(a, a_adj)),
                  psd_sqrt(identity(n) - multiply(a_adj, a)), a_adj);
}

double block_inverse_as_gram_inverse_residual(const FoguelOperator& f) {
  const FoguelInverse inv = foguel_inverse(f);
  return operator_norm(multiply(f.gram(), inv.inverse) -
                       identity(2 * f.dim()));
}

}  // namespace foguel::errata
