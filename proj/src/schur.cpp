#include "foguel/schur.hpp"

#include <cmath>
#include <sstream>

#include "foguel/error.hpp"
#include "foguel/spectral.hpp"

namespace foguel {

namespace {

void require_m_above_one(double m, const char* what) {
  if (!(m > 1.0 + 1e-12) || !std::isfinite(m)) {
    std::ostringstream os;
    os << what << " requires M > 1 (got " << m << ")";
    throw Error(ErrorCode::domain, os.str(), m);
  }
}

}  // namespace

ComplexMatrix schur_complement(const ComplexMatrix& p, const ComplexMatrix& x,
                               const ComplexMatrix& q) {
  validate_hermitian(p);
  validate_hermitian(q);
  if (x.rows() != p.rows() || x.cols() != q.rows())
    throw Error(ErrorCode::dimension, "schur_complement: block shapes differ");
  const double q_min = min_eigenvalue(q);
  if (!(q_min >= 1e-12)) {
    std::ostringstream os;
    os << "Schur complement needs Q positive definite (min eigenvalue "
       << q_min << ")";
    throw Error(ErrorCode::domain, os.str(), q_min);
  }
  const ComplexMatrix q_inv = solve_inverse(q);
  const ComplexMatrix c = p - multiply(multiply(x, q_inv), x.adjoint());
  return (c + c.adjoint()) * 0.5;
}

double default_positivity_threshold(double m) { return 1e-10 * (1.0 + m * m); }

double singular_band(double m) { return 1e-9 * (1.0 + m * m); }

PositivityCertificate foguel_positivity(const FoguelOperator& f, double m) {
  return foguel_positivity(f, m, default_positivity_threshold(m));
}

PositivityCertificate foguel_positivity(const FoguelOperator& f, double m,
                                        double threshold) {
  require_m_above_one(m, "positivity test");
  const Eigen::Index n = f.dim();
  const ComplexMatrix& g = f.gram();
  const double m2 = m * m;

  // M²I − R R* = [[M²I − G11, −G12], [−G21, M²I − G22]]
  const ComplexMatrix p = m2 * identity(n) - g.topLeftCorner(n, n);
  const ComplexMatrix x = -g.topRightCorner(n, n);
  const ComplexMatrix q = m2 * identity(n) - g.bottomRightCorner(n, n);

  PositivityCertificate cert;
  cert.m = m;
  cert.threshold = threshold;
  cert.reduced_matrix = schur_complement(p, x, q);
  cert.min_eigenvalue = min_eigenvalue(cert.reduced_matrix);
  cert.positive = cert.min_eigenvalue >= -threshold;

  cert.direct_min_eigenvalue = min_eigenvalue(m2 * identity(2 * n) - g);
  cert.direct_positive = cert.direct_min_eigenvalue >= -threshold;

  const double band = singular_band(m);
  cert.in_singular_band = std::abs(cert.min_eigenvalue) <= band &&
                          std::abs(cert.direct_min_eigenvalue) <= band;
  if (cert.positive != cert.direct_positive && !cert.in_singular_band) {
    std::ostringstream os;
    os << "Schur and direct positivity verdicts disagree at M = " << m
       << " (reduced min eig " << cert.min_eigenvalue << ", direct min eig "
       << cert.direct_min_eigenvalue << ")";
    throw Error(ErrorCode::internal_consistency, os.str(), m);
  }
  return cert;
}

ComplexMatrix neumann_eval(const ComplexMatrix& v, const ComplexMatrix& t,
                           double m, int order) {
  if (!(m > 1.0)) {
    std::ostringstream os;
    os << "Neumann series diverges for M = " << m;
    throw Error(ErrorCode::domain, os.str(), m);
  }
  if (order < 0) throw Error(ErrorCode::domain, "truncation order must be >= 0");
  if (v.rows() != v.cols() || t.rows() != t.cols() || v.rows() != t.rows())
    throw Error(ErrorCode::dimension, "V and T must be square of equal size");
  const double v_norm = operator_norm(v);
  if (!(v_norm <= 1.0 + 1e-10)) {
    std::ostringstream os;
    os << "Neumann evaluation needs ‖V‖ ≤ 1 (got " << v_norm << ")";
    throw Error(ErrorCode::domain, os.str(), v_norm);
  }

  const Eigen::Index n = v.rows();
  const ComplexMatrix v_adj = v.adjoint();
  const ComplexMatrix vv = multiply(v, v_adj);
  const double inv_m2 = 1.0 / (m * m);

  ComplexMatrix power = identity(n);  // (VV*)^j
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  double weight = inv_m2;  // M^{-2} M^{-2j}
  for (int j = 0; j <= order; ++j) {
    sum += weight * multiply(multiply(v, power), v_adj);
    power = multiply(power, vv);
    weight *= inv_m2;
  }
  return multiply(multiply(t, sum), t.adjoint());
}

ComplexMatrix neumann_closed_form(const ComplexMatrix& t, double m) {
  require_m_above_one(m, "Neumann closed form");
  return multiply(t, t.adjoint()) / (m * m - 1.0);
}

ComplexMatrix schur_offdiag_term(const ComplexMatrix& v, const ComplexMatrix& t,
                                 double m) {
  require_m_above_one(m, "Schur off-diagonal term");
  const Eigen::Index n = v.rows();
  const ComplexMatrix inner =
      solve_inverse(m * m * identity(n) - multiply(v, v.adjoint()));
  const ComplexMatrix left = multiply(t, v.adjoint());
  return multiply(multiply(left, inner), left.adjoint());
}

double neumann_truncation_bound(double symbol_norm, double m, int order) {
  const double inv_m2 = 1.0 / (m * m);
  return symbol_norm * symbol_norm * std::pow(inv_m2, order + 2) / (1.0 - inv_m2);
}

BisectionResult norm_by_bisection(const FoguelOperator& f, const Tolerance& tol) {
  const double t_norm = f.symbol_norm();
  BisectionResult out;
  if (t_norm == 0.0) {
    out.norm = f.is_isometric() ? 1.0 : f.norm();
    out.lower = out.upper = out.norm;
    return out;
  }

  double lo = 1.0 + 1e-12;
  double hi = foguel_norm_closed(t_norm) + 1.0;
  // Endpoint verdicts come from the reduced test, cross-checked inside
  // foguel_positivity against the direct one.
  const double lo_probe = lo * (1.0 + 1e-12);
  if (foguel_positivity(f, lo_probe).positive) {
    throw Error(ErrorCode::internal_consistency,
                "bisection bracket: positivity already holds just above 1");
  }
  if (!foguel_positivity(f, hi).positive) {
    std::ostringstream os;
    os << "bisection bracket: positivity fails at the upper end M = " << hi;
    throw Error(ErrorCode::internal_consistency, os.str(), hi);
  }

  while (hi - lo > tol.abs() && out.iterations < kMaxBisectionIterations) {
    const double mid = 0.5 * (lo + hi);
    if (foguel_positivity(f, mid).positive) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++out.iterations;
  }
  out.lower = lo;
  out.upper = hi;
  out.norm = 0.5 * (lo + hi);
  return out;
}

bool scalar_criterion(double symbol_norm, double m) {
  if (!(symbol_norm >= 0.0)) {
    std::ostringstream os;
    os << "symbol norm must be non-negative (got " << symbol_norm << ")";
    throw Error(ErrorCode::domain, os.str(), symbol_norm);
  }
  require_m_above_one(m, "scalar criterion");
  return symbol_norm <= symbol_norm_from_foguel(m);
}

}  // namespace foguel
