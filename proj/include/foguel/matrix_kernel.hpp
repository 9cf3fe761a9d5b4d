#pragma once

// Dense complex matrix primitives shared by every verification module.
//
// Storage and factorizations come from Eigen; products and entrywise
// residuals go through the runtime-dispatched kernels in simd/kernels.hpp.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace foguel {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

class Tolerance {
 public:
  // Throws ErrorCode::domain unless both parts are finite, non-negative and
  // at least one is strictly positive.
  explicit Tolerance(double abs, double rel = 0.0);

  double abs() const noexcept { return abs_; }
  double rel() const noexcept { return rel_; }

  // Allowed deviation between two values of the given magnitudes.
  double allowed(double a, double b) const noexcept;

 private:
  double abs_;
  double rel_;
};

ComplexMatrix identity(Eigen::Index n);

// A * B through the active SIMD kernel.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

// [[top_left, top_right], [bottom_left, bottom_right]]; blocks must tile.
ComplexMatrix block2x2(const ComplexMatrix& top_left,
                       const ComplexMatrix& top_right,
                       const ComplexMatrix& bottom_left,
                       const ComplexMatrix& bottom_right);

// Largest entrywise modulus of a - b, and of m - I.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_dev_identity(const ComplexMatrix& m);

double hermitian_asymmetry(const ComplexMatrix& m);

// Throws ErrorCode::not_hermitian (value = max asymmetry) when
// ‖M − M*‖_max exceeds 1e-12·(1 + ‖M‖_max).
void validate_hermitian(const ComplexMatrix& m);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, matching values
};

HermitianEigen hermitian_eigs(const ComplexMatrix& m);
RealVector hermitian_eigenvalues(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// Largest singular value.
double operator_norm(const ComplexMatrix& m);
RealVector singular_values(const ComplexMatrix& m);
// σ_max / σ_min; infinity for singular input.
double condition_number(const ComplexMatrix& m);

// Eigenvalues in [−1e-10, 0) are clamped to zero; anything lower throws
// ErrorCode::not_psd carrying the eigenvalue.
ComplexMatrix psd_sqrt(const ComplexMatrix& p);

inline constexpr double kDefaultRcondFloor = 1e-12;

// LU inverse. Throws ErrorCode::singular with value = condition estimate
// when the reciprocal condition estimate falls below the floor.
ComplexMatrix solve_inverse(const ComplexMatrix& m,
                            double rcond_floor = kDefaultRcondFloor);

struct MultisetMatch {
  double max_deviation = 0.0;
  bool matched = true;
  std::size_t worst_index = 0;  // position in the sorted lists
};

// Sorts both lists and compares them elementwise. Throws
// ErrorCode::length_mismatch when the sizes differ.
MultisetMatch multiset_match(std::vector<double> a, std::vector<double> b,
                             const Tolerance& tol);

std::vector<double> to_std(const RealVector& v);

}  // namespace foguel
