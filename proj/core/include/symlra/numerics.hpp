#pragma once

#include <optional>

#include "symlra/types.hpp"

// Dense linear-algebra kernels. Everything else in the library goes
// through these, so the backend (Eigen) is swappable in one place.
namespace symlra::numerics {

/// Default relative rank tolerance: max(p, q) * machine epsilon.
double default_rank_tol(Eigen::Index rows, Eigen::Index cols);

struct LeastSquaresSolution {
  CVector x;         // minimum-norm minimizer of |Ax - b|
  CMatrix null;      // orthonormal basis of the numerical null space (q x k)
  Eigen::Index rank = 0;
};

/// Minimum-norm least squares with null-space basis. Singular values at or
/// below rank_tol * sigma_max count as zero. A may have zero rows, in
/// which case x = 0 and null = I.
LeastSquaresSolution minnorm_least_squares(const CMatrix& a, const CVector& b,
                                           std::optional<double> rank_tol = std::nullopt);

/// Nonincreasing, length min(p, q).
RVector singular_values(const CMatrix& a);

struct HermitianMinEig {
  CVector vector;  // unit length
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Eigenpair for the smallest eigenvalue of (H + H^*)/2.
HermitianMinEig hermitian_smallest_eigvec(const CMatrix& h);

struct SchurForm {
  CMatrix q;  // unitary
  CMatrix t;  // upper triangular, Q^* L Q = T
};

SchurForm complex_schur(const CMatrix& l);

/// [X, Y] = XY - YX
inline CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

/// Lifts a holomorphic complex Jacobian (d r / d z) to the real Jacobian of
/// the stacked residual (Re r; Im r) with respect to (Re z; Im z).
RMatrix lift_holomorphic_jacobian(const CMatrix& jc);

/// (Re v; Im v)
RVector stack_complex(const CVector& v);
/// Inverse of stack_complex.
CVector unstack_complex(const RVector& v);

}  // namespace symlra::numerics
