#include "symlra/numerics.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace symlra::numerics {

double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

LeastSquaresSolution minnorm_least_squares(const CMatrix& a, const CVector& b, std::optional<double> rank_tol) {
  const Eigen::Index p = a.rows(), q = a.cols();
  LeastSquaresSolution out;
  if (p == 0 || q == 0) {
    out.x = CVector::Zero(q);
    out.null = CMatrix::Identity(q, q);
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double tol = rank_tol.value_or(default_rank_tol(p, q)) * (s.size() ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > tol) ++rank;

  const CMatrix& v = svd.matrixV();
  const CMatrix& u = svd.matrixU();
  CVector coeff = u.leftCols(rank).adjoint() * b;
  for (Eigen::Index i = 0; i < rank; ++i) coeff[i] /= s[i];
  out.x = v.leftCols(rank) * coeff;
  out.null = v.rightCols(q - rank);
  out.rank = rank;
  return out;
}

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector();
  if (std::max(a.rows(), a.cols()) > 64) return Eigen::BDCSVD<CMatrix>(a).singularValues();
  return Eigen::JacobiSVD<CMatrix>(a).singularValues();
}

HermitianMinEig hermitian_smallest_eigvec(const CMatrix& h) {
  const CMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  HermitianMinEig out;
  out.vector = es.eigenvectors().col(0);
  out.vector.normalize();
  out.min_value = es.eigenvalues()[0];
  out.max_value = es.eigenvalues()[es.eigenvalues().size() - 1];
  return out;
}

SchurForm complex_schur(const CMatrix& l) {
  Eigen::ComplexSchur<CMatrix> cs(l);
  return {cs.matrixU(), cs.matrixT()};
}

RMatrix lift_holomorphic_jacobian(const CMatrix& jc) {
  const Eigen::Index r = jc.rows(), c = jc.cols();
  RMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = jc.real();
  out.topRightCorner(r, c) = -jc.imag();
  out.bottomLeftCorner(r, c) = jc.imag();
  out.bottomRightCorner(r, c) = jc.real();
  return out;
}

RVector stack_complex(const CVector& v) {
  RVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

CVector unstack_complex(const RVector& v) {
  const Eigen::Index k = v.size() / 2;
  CVector out(k);
  for (Eigen::Index i = 0; i < k; ++i) out[i] = Complex(v[i], v[k + i]);
  return out;
}

}  // namespace symlra::numerics
