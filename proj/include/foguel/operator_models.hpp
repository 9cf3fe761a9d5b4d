#pragma once

#include <cstdint>
#include <random>

#include "foguel/matrix_kernel.hpp"

namespace foguel {

// Deterministic complex Gaussian source for one trial.
//
// The raw engine is std::mt19937_64, whose output sequence is fixed by the
// standard; uniforms and normals are derived here (53-bit mantissa
// uniforms, Box-Muller normals) rather than through std::*_distribution,
// whose algorithms are implementation-defined.
class SeededGenerator {
 public:
  SeededGenerator(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  // Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// n x n matrix of i.i.d. complex_normal() entries, filled column by column.
ComplexMatrix ginibre(Eigen::Index n, SeededGenerator& gen);

// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
// diag(R) folded back into Q.
ComplexMatrix haar_unitary(Eigen::Index n, SeededGenerator& gen);

// S e_i = e_{i+1} for i < n, S e_n = 0.
ComplexMatrix truncated_shift(Eigen::Index n);

// Ginibre / sqrt(n) with every singular value above 1 clipped to 1.
ComplexMatrix random_contraction(Eigen::Index n, SeededGenerator& gen);

// T placed in the leading k x k corner of an N x N zero matrix.
ComplexMatrix embed_corner(const ComplexMatrix& t, Eigen::Index n);

inline constexpr double kIsometryTolerance = 1e-10;

// R_T = [[V*, T], [0, V]] for a square V (isometry slot) and symbol T.
class FoguelOperator {
 public:
  // Throws ErrorCode::dimension for non-square or mismatched blocks and,
  // when require_isometry is set, ErrorCode::not_isometry if
  // ‖V*V − I‖ > 1e-10.
  static FoguelOperator build(ComplexMatrix v, ComplexMatrix t,
                              bool require_isometry);

  Eigen::Index dim() const noexcept { return v_.rows(); }
  const ComplexMatrix& v() const noexcept { return v_; }
  const ComplexMatrix& t() const noexcept { return t_; }
  double isometry_defect() const noexcept { return isometry_defect_; }
  bool is_isometric() const noexcept {
    return isometry_defect_ <= kIsometryTolerance;
  }

  // The assembled 2n x 2n block matrix.
  const ComplexMatrix& matrix() const noexcept { return r_; }

  // R_T R_T* from the block formula [[V*V + TT*, TV*], [VT*, VV*]]
  // (V*V = I for an isometry), checked against the direct product.
  const ComplexMatrix& gram() const noexcept { return gram_; }

  double norm() const { return operator_norm(r_); }
  double symbol_norm() const { return operator_norm(t_); }

 private:
  FoguelOperator(ComplexMatrix v, ComplexMatrix t, double defect);

  ComplexMatrix v_;
  ComplexMatrix t_;
  double isometry_defect_;
  ComplexMatrix r_;
  ComplexMatrix gram_;
};

// ‖V*V − I‖ in operator norm.
double isometry_defect(const ComplexMatrix& v);

}  // namespace foguel
