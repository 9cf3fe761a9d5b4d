#include "foguel/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "foguel/error.hpp"
#include "foguel/simd/kernels.hpp"

namespace foguel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::not_psd: return "not_psd";
    case ErrorCode::singular: return "singular";
    case ErrorCode::near_singular: return "near_singular";
    case ErrorCode::not_contraction: return "not_contraction";
    case ErrorCode::not_isometry: return "not_isometry";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::length_mismatch: return "length_mismatch";
    case ErrorCode::internal_consistency: return "internal_consistency";
    case ErrorCode::property_failure: return "property_failure";
    case ErrorCode::usage: return "usage";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Tolerance::Tolerance(double abs, double rel) : abs_(abs), rel_(rel) {
  if (!std::isfinite(abs) || !std::isfinite(rel) || abs < 0.0 || rel < 0.0 ||
      (abs == 0.0 && rel == 0.0)) {
    std::ostringstream os;
    os << "invalid tolerance (abs=" << abs << ", rel=" << rel << ")";
    throw Error(ErrorCode::domain, os.str());
  }
}

double Tolerance::allowed(double a, double b) const noexcept {
  return abs_ + rel_ * std::max(std::abs(a), std::abs(b));
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "multiply: inner dimensions differ (" << a.rows() << "x" << a.cols()
       << " * " << b.rows() << "x" << b.cols() << ")";
    throw Error(ErrorCode::dimension, os.str());
  }
  ComplexMatrix c(a.rows(), b.cols());
  if (c.size() == 0) return c;
  if (a.cols() == 0) {
    c.setZero();
    return c;
  }
  simd::active_kernels().gemm(static_cast<std::size_t>(a.rows()),
                              static_cast<std::size_t>(b.cols()),
                              static_cast<std::size_t>(a.cols()), a.data(),
                              b.data(), c.data());
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix block2x2(const ComplexMatrix& top_left,
                       const ComplexMatrix& top_right,
                       const ComplexMatrix& bottom_left,
                       const ComplexMatrix& bottom_right) {
  if (top_left.rows() != top_right.rows() ||
      bottom_left.rows() != bottom_right.rows() ||
      top_left.cols() != bottom_left.cols() ||
      top_right.cols() != bottom_right.cols()) {
    throw Error(ErrorCode::dimension, "block2x2: blocks do not tile");
  }
  ComplexMatrix out(top_left.rows() + bottom_left.rows(),
                    top_left.cols() + top_right.cols());
  out << top_left, top_right, bottom_left, bottom_right;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension, "max_abs_diff: shape mismatch");
  return simd::max_abs_diff({a.data(), static_cast<std::size_t>(a.size())},
                            {b.data(), static_cast<std::size_t>(b.size())});
}

double max_abs_dev_identity(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::dimension, "max_abs_dev_identity: not square");
  return std::sqrt(simd::active_kernels().max_sq_dev_identity(
      static_cast<std::size_t>(m.rows()), m.data()));
}

double hermitian_asymmetry(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::dimension, "hermitian_asymmetry: not square");
  const ComplexMatrix adj = m.adjoint();
  return max_abs_diff(m, adj);
}

void validate_hermitian(const ComplexMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw Error(ErrorCode::dimension, "expected a non-empty square matrix");
  const double asym = hermitian_asymmetry(m);
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |M - M*| = " << asym;
    throw Error(ErrorCode::not_hermitian, os.str(), asym);
  }
}

namespace {

template <typename Solver>
void check_converged(const Solver& solver, Eigen::Index n) {
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigensolver did not converge within "
       << Solver::m_maxIterations * n << " QR iterations (n = " << n << ")";
    throw Error(ErrorCode::non_convergence, os.str(),
                static_cast<double>(Solver::m_maxIterations * n));
  }
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  validate_hermitian(m);
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

HermitianEigen hermitian_eigs(const ComplexMatrix& m) {
  using Solver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;
  Solver solver(symmetrized(m), Eigen::ComputeEigenvectors);
  check_converged(solver, m.rows());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  using Solver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;
  Solver solver(symmetrized(m), Eigen::EigenvaluesOnly);
  check_converged(solver, m.rows());
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m)(0);
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return RealVector();
  // Eigen 3.4's divide-and-conquer SVD misreports the top singular value of
  // some structured complex matrices (zero blocks plus shifts); one-sided
  // Jacobi does not.
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  // √λmax of the smaller Gram matrix carries full relative accuracy for the
  // largest singular value.
  const ComplexMatrix gram = m.rows() <= m.cols() ? multiply(m, m.adjoint())
                                                  : multiply(m.adjoint(), m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::non_convergence, "eigensolver did not converge");
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double condition_number(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double smin = s.minCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s.maxCoeff() / smin;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  const HermitianEigen eig = hermitian_eigs(p);
  const double lowest = eig.values(0);
  if (lowest < -1e-10) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite: eigenvalue " << lowest;
    throw Error(ErrorCode::not_psd, os.str(), lowest);
  }
  const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix scaled = eig.vectors * roots.cast<cplx>().asDiagonal();
  ComplexMatrix out = multiply(scaled, eig.vectors.adjoint());
  return (out + out.adjoint()) * 0.5;
}

ComplexMatrix solve_inverse(const ComplexMatrix& m, double rcond_floor) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw Error(ErrorCode::dimension, "solve_inverse: expected a square matrix");
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond >= rcond_floor)) {
    const double cond = rcond > 0.0 ? 1.0 / rcond
                                    : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "matrix is singular or ill-conditioned (condition estimate " << cond
       << ")";
    throw Error(ErrorCode::singular, os.str(), cond);
  }
  return lu.inverse();
}

MultisetMatch multiset_match(std::vector<double> a, std::vector<double> b,
                             const Tolerance& tol) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "multiset sizes differ (" << a.size() << " vs " << b.size() << ")";
    throw Error(ErrorCode::length_mismatch, os.str());
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  MultisetMatch out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dev = std::abs(a[i] - b[i]);
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.worst_index = i;
    }
    if (!(dev <= tol.allowed(a[i], b[i]))) out.matched = false;
  }
  return out;
}

std::vector<double> to_std(const RealVector& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace foguel
