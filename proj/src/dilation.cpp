#include "foguel/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "foguel/error.hpp"
#include "foguel/operator_models.hpp"
#include "foguel/simd/kernels.hpp"
#include "foguel/spectral.hpp"

namespace foguel {

namespace {

void require_square_pair(const ComplexMatrix& a, const ComplexMatrix& t) {
  if (a.rows() < 1 || a.rows() != a.cols() || t.rows() != t.cols() ||
      t.rows() != a.rows()) {
    throw Error(ErrorCode::dimension,
                "A and T must be square matrices of equal size");
  }
}

double require_contraction(const ComplexMatrix& a) {
  const double norm = operator_norm(a);
  if (!(norm <= 1.0 + kContractionTolerance)) {
    std::ostringstream os;
    os << "A is not a contraction: ‖A‖ = " << norm;
    throw Error(ErrorCode::not_contraction, os.str(), norm);
  }
  return norm;
}

// y += alpha * x
void accumulate(ComplexMatrix& y, cplx alpha, const ComplexMatrix& x) {
  simd::axpy(alpha, {x.data(), static_cast<std::size_t>(x.size())},
             {y.data(), static_cast<std::size_t>(y.size())});
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0, 0.0)) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int degree, cplx coeff) {
  if (degree < 0) throw Error(ErrorCode::domain, "monomial degree must be >= 0");
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::tilde() const {
  std::vector<cplx> c;
  c.reserve(coeffs_.size());
  for (const cplx& a : coeffs_) c.emplace_back(std::abs(a), 0.0);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<cplx> c(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    c[j - 1] = static_cast<double>(j) * coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<cplx> c = coeffs_;
  for (cplx& a : c) a *= factor;
  return Polynomial(std::move(c));
}

double disk_sup_norm(const Polynomial& p, std::size_t samples) {
  if (samples == 0) throw Error(ErrorCode::domain, "need at least one sample");
  double best = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    best = std::max(best, std::abs(p(std::polar(1.0, theta))));
  }
  return best;
}

double tilde_deriv_bound(const Polynomial& p) {
  double sum = 0.0;
  const auto& c = p.coeffs();
  for (std::size_t j = 1; j < c.size(); ++j)
    sum += static_cast<double>(j) * std::abs(c[j]);
  return sum;
}

double unitarity_defect(const ComplexMatrix& u) {
  const Eigen::Index n = u.rows();
  const double left = operator_norm(multiply(u.adjoint(), u) - identity(n));
  const double right = operator_norm(multiply(u, u.adjoint()) - identity(n));
  return std::max(left, right);
}

ComplexMatrix halmos_dilation(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw Error(ErrorCode::dimension, "dilation needs a square matrix");
  require_contraction(a);
  const ComplexMatrix a_adj = a.adjoint();
  // With A = P Σ Q*, (I − AA*)^{1/2} = P √(I − Σ²) P* and
  // (I − A*A)^{1/2} = Q √(I − Σ²) Q*. Sharing one factorisation keeps the
  // blocks consistent when singular values sit at 1, where separate
  // eigen square roots lose half the digits.
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sigma = svd.singularValues();
  const RealVector root =
      (1.0 - sigma.array().square()).max(0.0).sqrt().matrix();
  const ComplexMatrix& p = svd.matrixU();
  const ComplexMatrix& q = svd.matrixV();
  const ComplexMatrix defect_left =
      multiply(p * root.cast<cplx>().asDiagonal(), p.adjoint());
  const ComplexMatrix defect_right =
      multiply(q * root.cast<cplx>().asDiagonal(), q.adjoint());
  ComplexMatrix u = block2x2(a, defect_left, defect_right, -a_adj);
  const double defect = unitarity_defect(u);
  if (!(defect <= 1e-9)) {
    std::ostringstream os;
    os << "dilation failed unitarity check: defect " << defect;
    throw Error(ErrorCode::internal_consistency, os.str(), defect);
  }
  return u;
}

DilationLift lift_foguel(const ComplexMatrix& a, const ComplexMatrix& t) {
  require_square_pair(a, t);
  const Eigen::Index n = a.rows();
  DilationLift lift;
  lift.a = a;
  lift.va = halmos_dilation(a);
  lift.ttilde = ComplexMatrix::Zero(2 * n, 2 * n);
  lift.ttilde.topRightCorner(n, n) = t;
  lift.w = FoguelOperator::build(lift.va, lift.ttilde, true).matrix();
  return lift;
}

ComplexMatrix generalized_foguel(const ComplexMatrix& a, const ComplexMatrix& t) {
  require_square_pair(a, t);
  return block2x2(a.adjoint(), t, ComplexMatrix::Zero(a.rows(), a.rows()), a);
}

CompressionReport compress_generalized(const ComplexMatrix& a,
                                       const ComplexMatrix& t) {
  const DilationLift lift = lift_foguel(a, t);
  CompressionReport report;
  report.r = generalized_foguel(a, t);
  report.norm_r = operator_norm(report.r);
  report.norm_w = operator_norm(lift.w);
  report.symbol_norm = operator_norm(t);
  report.closed_form = foguel_norm_closed(report.symbol_norm);
  report.holds = report.norm_r <= report.norm_w + 1e-10 &&
                 report.norm_r <= report.closed_form + 1e-8;
  return report;
}

ComplexMatrix power_offdiag(const ComplexMatrix& a, const ComplexMatrix& t,
                            int n) {
  require_square_pair(a, t);
  if (n < 1) {
    std::ostringstream os;
    os << "D_n is defined for n >= 1 (got " << n << ")";
    throw Error(ErrorCode::domain, os.str(), n);
  }
  const Eigen::Index dim = a.rows();
  const ComplexMatrix a_adj = a.adjoint();
  // powers[k] = A^k, adj_powers[k] = (A*)^k for k < n
  std::vector<ComplexMatrix> powers{identity(dim)};
  std::vector<ComplexMatrix> adj_powers{identity(dim)};
  for (int k = 1; k < n; ++k) {
    powers.push_back(multiply(powers.back(), a));
    adj_powers.push_back(multiply(adj_powers.back(), a_adj));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix term =
        multiply(multiply(adj_powers[static_cast<std::size_t>(j)], t),
                 powers[static_cast<std::size_t>(n - 1 - j)]);
    accumulate(sum, 1.0, term);
  }
  return sum;
}

BlockCalculus foguel_power(const ComplexMatrix& a, const ComplexMatrix& t,
                           int n) {
  const ComplexMatrix d = power_offdiag(a, t, n);
  const Eigen::Index dim = a.rows();
  const ComplexMatrix a_adj = a.adjoint();
  ComplexMatrix a_pow = a;
  ComplexMatrix adj_pow = a_adj;
  for (int k = 1; k < n; ++k) {
    a_pow = multiply(a_pow, a);
    adj_pow = multiply(adj_pow, a_adj);
  }
  BlockCalculus out;
  out.matrix = block2x2(adj_pow, d, ComplexMatrix::Zero(dim, dim), a_pow);

  const ComplexMatrix r = generalized_foguel(a, t);
  ComplexMatrix direct = r;
  for (int k = 1; k < n; ++k) direct = multiply(direct, r);
  out.deviation = operator_norm(out.matrix - direct);
  out.scale = std::pow(1.0 + operator_norm(r), n);
  if (!(out.deviation <= 1e-9 * out.scale)) {
    std::ostringstream os;
    os << "block power formula disagrees with R^" << n << " by "
       << out.deviation;
    throw Error(ErrorCode::internal_consistency, os.str(), out.deviation);
  }
  return out;
}

BlockCalculus poly_apply(const Polynomial& p, const ComplexMatrix& a,
                         const ComplexMatrix& t) {
  require_square_pair(a, t);
  const Eigen::Index dim = a.rows();
  const ComplexMatrix a_adj = a.adjoint();
  const ComplexMatrix r = generalized_foguel(a, t);
  const double r_norm = operator_norm(r);

  ComplexMatrix upper_left = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix upper_right = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix lower_right = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix direct = ComplexMatrix::Zero(2 * dim, 2 * dim);

  ComplexMatrix a_pow = identity(dim);
  ComplexMatrix adj_pow = identity(dim);
  ComplexMatrix r_pow = identity(2 * dim);
  ComplexMatrix d = ComplexMatrix::Zero(dim, dim);  // D_j
  double scale = 0.0;

  const auto& c = p.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0) {
      // D_j = A* D_{j-1} + T A^{j-1}, with D_0 = 0
      d = multiply(a_adj, d) + multiply(t, a_pow);
      a_pow = multiply(a_pow, a);
      adj_pow = multiply(adj_pow, a_adj);
      r_pow = multiply(r_pow, r);
      accumulate(upper_right, c[j], d);
    }
    accumulate(upper_left, c[j], adj_pow);
    accumulate(lower_right, c[j], a_pow);
    accumulate(direct, c[j], r_pow);
    scale += std::abs(c[j]) * std::pow(1.0 + r_norm, static_cast<double>(j));
  }

  BlockCalculus out;
  out.matrix = block2x2(upper_left, upper_right, ComplexMatrix::Zero(dim, dim),
                        lower_right);
  out.deviation = operator_norm(out.matrix - direct);
  out.scale = std::max(scale, 1.0);
  if (!(out.deviation <= 1e-9 * out.scale)) {
    std::ostringstream os;
    os << "block polynomial formula disagrees with direct evaluation by "
       << out.deviation;
    throw Error(ErrorCode::internal_consistency, os.str(), out.deviation);
  }
  return out;
}

PolyBoundReport verify_poly_bound(const Polynomial& p, const ComplexMatrix& a,
                                  const ComplexMatrix& t) {
  require_square_pair(a, t);
  PolyBoundReport report;
  report.sup_norm = disk_sup_norm(p);
  if (!(report.sup_norm <= 1.0 + 1e-10)) {
    std::ostringstream os;
    os << "polynomial must satisfy ‖p‖_∞ ≤ 1 on the disk (sampled "
       << report.sup_norm << ")";
    throw Error(ErrorCode::domain, os.str(), report.sup_norm);
  }
  const double a_norm = require_contraction(a);

  const BlockCalculus value = poly_apply(p, a, t);
  const Eigen::Index dim = a.rows();
  report.tilde_deriv = tilde_deriv_bound(p);
  report.symbol_norm = operator_norm(t);
  report.norm_poly_r = operator_norm(value.matrix);
  report.bound = foguel_norm_closed(report.tilde_deriv * report.symbol_norm);
  report.offdiag_norm = operator_norm(value.matrix.topRightCorner(dim, dim));

  double weighted = 0.0;
  const auto& c = p.coeffs();
  for (std::size_t j = 1; j < c.size(); ++j) {
    weighted += static_cast<double>(j) * std::abs(c[j]) *
                std::pow(a_norm, static_cast<double>(j - 1));
  }
  report.offdiag_chain_middle = report.symbol_norm * weighted;
  report.offdiag_chain_upper = report.symbol_norm * report.tilde_deriv;

  const double chain_tol = 1e-9 * (1.0 + report.offdiag_chain_upper);
  report.holds = report.slack() >= -1e-8 &&
                 report.offdiag_norm <= report.offdiag_chain_middle + chain_tol &&
                 report.offdiag_chain_middle <= report.offdiag_chain_upper + chain_tol;
  return report;
}

}  // namespace foguel
