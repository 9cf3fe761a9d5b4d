#include "foguel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "foguel/error.hpp"

namespace foguel {

namespace {

void require_isometric(const FoguelOperator& f, const char* what) {
  if (!f.is_isometric()) {
    std::ostringstream os;
    os << what << " needs a unitary V (‖V*V - I‖ = " << f.isometry_defect()
       << ")";
    throw Error(ErrorCode::not_isometry, os.str(), f.isometry_defect());
  }
}

}  // namespace

double forward_map(double lambda) {
  if (!(lambda > 0.0)) {
    std::ostringstream os;
    os << "forward_map requires λ > 0 (got " << lambda << ")";
    throw Error(ErrorCode::domain, os.str(), lambda);
  }
  const double d = lambda - 1.0;
  return d * d / lambda;
}

BranchPair inverse_branches(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    std::ostringstream os;
    os << "inverse_branches requires μ ≥ 0 (got " << mu << ")";
    throw Error(ErrorCode::domain, os.str(), mu);
  }
  // The larger root is computed directly; the smaller as its reciprocal,
  // which avoids cancellation and makes the pair product exact up to one
  // rounding.
  const double plus = 0.5 * ((mu + 2.0) + std::sqrt(mu * (mu + 4.0)));
  return {1.0 / plus, plus};
}

double foguel_norm_closed(double symbol_norm) {
  if (!(symbol_norm >= 0.0)) {
    std::ostringstream os;
    os << "symbol norm must be non-negative (got " << symbol_norm << ")";
    throw Error(ErrorCode::domain, os.str(), symbol_norm);
  }
  return 0.5 * (symbol_norm + std::sqrt(symbol_norm * symbol_norm + 4.0));
}

double symbol_norm_from_foguel(double foguel_norm) {
  if (!(foguel_norm >= 1.0)) {
    std::ostringstream os;
    os << "a Foguel operator has norm at least 1 (got " << foguel_norm << ")";
    throw Error(ErrorCode::domain, os.str(), foguel_norm);
  }
  return foguel_norm - 1.0 / foguel_norm;
}

SpectralMapReport verify_spectral_mapping(const FoguelOperator& f,
                                          const Tolerance& tol) {
  require_isometric(f, "spectral mapping");
  const ComplexMatrix& t = f.t();
  const ComplexMatrix tt = multiply(t, t.adjoint());

  SpectralMapReport report;
  report.gram_spectrum = to_std(hermitian_eigenvalues(f.gram()));
  report.symbol_gram_spectrum = to_std(hermitian_eigenvalues(tt));

  report.predicted_spectrum.reserve(2 * report.symbol_gram_spectrum.size());
  for (double mu : report.symbol_gram_spectrum) {
    // TT* is PSD; tiny negative eigenvalues are rounding.
    const BranchPair pair = inverse_branches(std::max(mu, 0.0));
    report.max_branch_product_error =
        std::max(report.max_branch_product_error,
                 std::abs(pair.minus * pair.plus - 1.0));
    report.predicted_spectrum.push_back(pair.minus);
    report.predicted_spectrum.push_back(pair.plus);
  }
  std::sort(report.predicted_spectrum.begin(), report.predicted_spectrum.end());

  if (report.predicted_spectrum.size() != report.gram_spectrum.size()) {
    throw Error(ErrorCode::internal_consistency,
                "predicted spectrum has the wrong multiplicity");
  }
  const MultisetMatch match =
      multiset_match(report.gram_spectrum, report.predicted_spectrum, tol);
  report.max_deviation = match.max_deviation;
  report.matched = match.matched;
  return report;
}

ComplexMatrix ResolventBlocks::assemble() const {
  return block2x2(a, x, x.adjoint(), b);
}

namespace detail {

ResolventBlocks resolvent_blocks_with_coefficient(const FoguelOperator& f,
                                                  double lambda, double min_gap,
                                                  double a_coefficient) {
  const ComplexMatrix& v = f.v();
  const ComplexMatrix& t = f.t();
  const Eigen::Index n = f.dim();
  const ComplexMatrix tt = multiply(t, t.adjoint());

  const double mu = forward_map(lambda);
  const RealVector mus = hermitian_eigenvalues(tt);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < mus.size(); ++i)
    gap = std::min(gap, std::abs(mus(i) - mu));
  if (!(gap >= min_gap)) {
    std::ostringstream os;
    os << "f(λ) = " << mu << " lies within " << gap
       << " of spec(TT*) (required gap " << min_gap << ")";
    throw Error(ErrorCode::near_singular, os.str(), gap);
  }

  const ComplexMatrix shifted = tt - mu * identity(n);
  const double lm1 = lambda - 1.0;
  const ComplexMatrix v_adj = v.adjoint();

  ResolventBlocks out;
  out.lambda = lambda;
  out.spectral_gap = gap;
  out.a = a_coefficient * solve_inverse(shifted);
  out.x = multiply(multiply(out.a, t), v_adj) / lm1;
  out.b = (multiply(multiply(v, t.adjoint()), out.x) - multiply(v, v_adj)) / lm1;

  const ComplexMatrix s = out.assemble();
  const ComplexMatrix shifted_gram = f.gram() - lambda * identity(2 * n);
  out.residual = operator_norm(multiply(shifted_gram, s) - identity(2 * n));
  out.cross_residual = operator_norm(multiply(t.adjoint(), out.a) -
                                   lm1 * multiply(v_adj, out.x.adjoint()));
  return out;
}

}  // namespace detail

ResolventBlocks resolvent_blocks(const FoguelOperator& f, double lambda,
                                 double min_gap) {
  require_isometric(f, "resolvent construction");
  if (!(lambda >= kLambdaExclusion) ||
      !(std::abs(lambda - 1.0) >= kLambdaExclusion)) {
    std::ostringstream os;
    os << "λ = " << lambda << " lies in the excluded band around 0 or 1";
    throw Error(ErrorCode::domain, os.str(), lambda);
  }
  return detail::resolvent_blocks_with_coefficient(f, lambda, min_gap,
                                                   (lambda - 1.0) / lambda);
}

FoguelInverse foguel_inverse(const FoguelOperator& f) {
  require_isometric(f, "Foguel inverse");
  const ComplexMatrix& v = f.v();
  const Eigen::Index n = f.dim();
  const ComplexMatrix v_adj = v.adjoint();

  FoguelInverse out;
  out.inverse = block2x2(v, -multiply(multiply(v, f.t()), v_adj),
                         ComplexMatrix::Zero(n, n), v_adj);
  out.gram_inverse = multiply(out.inverse.adjoint(), out.inverse);
  out.residual =
      operator_norm(multiply(f.matrix(), out.inverse) - identity(2 * n));
  out.gram_residual =
      operator_norm(multiply(f.gram(), out.gram_inverse) - identity(2 * n));
  return out;
}

GramMinusIdentityInverse gram_minus_identity_inverse(const FoguelOperator& f,
                                                     double condition_ceiling) {
  require_isometric(f, "inverse of R R* - I");
  const Eigen::Index n = f.dim();
  GramMinusIdentityInverse out;
  out.symbol_condition = condition_number(f.t());
  if (!(out.symbol_condition <= condition_ceiling)) {
    std::ostringstream os;
    os << "R R* - I is not invertible: T is singular or ill-conditioned "
          "(cond(T) = "
       << out.symbol_condition << ")";
    throw Error(ErrorCode::singular, os.str(), out.symbol_condition);
  }
  const ComplexMatrix t_inv = solve_inverse(f.t(), 1.0 / (10.0 * condition_ceiling));
  out.x = multiply(t_inv.adjoint(), f.v().adjoint());
  out.inverse = block2x2(ComplexMatrix::Zero(n, n), out.x, out.x.adjoint(),
                         -identity(n));
  const ComplexMatrix shifted = f.gram() - identity(2 * n);
  out.residual = operator_norm(multiply(shifted, out.inverse) - identity(2 * n));
  return out;
}

}  // namespace foguel
