#include "foguel/operator_models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "foguel/error.hpp"

namespace foguel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_dim(Eigen::Index n, const char* what) {
  if (n < 1) {
    std::ostringstream os;
    os << what << ": dimension must be at least 1 (got " << n << ")";
    throw Error(ErrorCode::dimension, os.str(), static_cast<double>(n));
  }
}

}  // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(splitmix64(seed ^ splitmix64(stream_id + 0x5851f42d4c957f2dULL))) {}

double SeededGenerator::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededGenerator::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx SeededGenerator::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(Eigen::Index n, SeededGenerator& gen) {
  require_dim(n, "ginibre");
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = gen.complex_normal();
  return g;
}

ComplexMatrix haar_unitary(Eigen::Index n, SeededGenerator& gen) {
  require_dim(n, "haar_unitary");
  const ComplexMatrix g = ginibre(n, gen);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * identity(n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    const cplx phase = mag > 0.0 ? d / mag : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix truncated_shift(Eigen::Index n) {
  require_dim(n, "truncated_shift");
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

ComplexMatrix random_contraction(Eigen::Index n, SeededGenerator& gen) {
  require_dim(n, "random_contraction");
  const ComplexMatrix g = ginibre(n, gen) / std::sqrt(static_cast<double>(n));
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector clipped = svd.singularValues().cwiseMin(1.0);
  const ComplexMatrix us = svd.matrixU() * clipped.cast<cplx>().asDiagonal();
  return multiply(us, svd.matrixV().adjoint());
}

ComplexMatrix embed_corner(const ComplexMatrix& t, Eigen::Index n) {
  if (t.rows() != t.cols())
    throw Error(ErrorCode::dimension, "embed_corner: symbol must be square");
  if (t.rows() > n) {
    std::ostringstream os;
    os << "embed_corner: " << t.rows() << "x" << t.rows()
       << " symbol does not fit in dimension " << n;
    throw Error(ErrorCode::dimension, os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  out.topLeftCorner(t.rows(), t.cols()) = t;
  return out;
}

double isometry_defect(const ComplexMatrix& v) {
  const ComplexMatrix vv = multiply(v.adjoint(), v);
  return operator_norm(vv - identity(v.cols()));
}

FoguelOperator FoguelOperator::build(ComplexMatrix v, ComplexMatrix t,
                                     bool require_isometry) {
  if (v.rows() < 1 || v.rows() != v.cols() || t.rows() != t.cols() ||
      t.rows() != v.rows()) {
    std::ostringstream os;
    os << "Foguel operator needs square V and T of equal size (V is "
       << v.rows() << "x" << v.cols() << ", T is " << t.rows() << "x"
       << t.cols() << ")";
    throw Error(ErrorCode::dimension, os.str());
  }
  const double defect = foguel::isometry_defect(v);
  if (require_isometry && !(defect <= kIsometryTolerance)) {
    std::ostringstream os;
    os << "V is not an isometry: ‖V*V - I‖ = " << defect;
    throw Error(ErrorCode::not_isometry, os.str(), defect);
  }
  return FoguelOperator(std::move(v), std::move(t), defect);
}

FoguelOperator::FoguelOperator(ComplexMatrix v, ComplexMatrix t, double defect)
    : v_(std::move(v)), t_(std::move(t)), isometry_defect_(defect) {
  const Eigen::Index n = v_.rows();
  const ComplexMatrix v_adj = v_.adjoint();
  const ComplexMatrix t_adj = t_.adjoint();
  r_ = block2x2(v_adj, t_, ComplexMatrix::Zero(n, n), v_);

  const ComplexMatrix top_left = multiply(v_adj, v_) + multiply(t_, t_adj);
  const ComplexMatrix top_right = multiply(t_, v_adj);
  gram_ = block2x2(top_left, top_right, top_right.adjoint(),
                   multiply(v_, v_adj));

  const ComplexMatrix direct = multiply(r_, r_.adjoint());
  const double r_norm = operator_norm(r_);
  const double deviation = operator_norm(gram_ - direct);
  if (!(deviation <= 1e-12 * (1.0 + r_norm * r_norm))) {
    std::ostringstream os;
    os << "Gram block formula disagrees with R R* by " << deviation;
    throw Error(ErrorCode::internal_consistency, os.str(), deviation);
  }
  validate_hermitian(gram_);
}

}  // namespace foguel
