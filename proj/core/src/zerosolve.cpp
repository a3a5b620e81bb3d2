#include "symlra/zerosolve.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "symlra/decomposition.hpp"
#include "symlra/numerics.hpp"

namespace symlra {

VHat build_vhat(const CompanionSet& c) {
  const int nv = c.nvars();
  const Eigen::Index s = c.size() * c.size();
  VHat out;
  out.vhat = CMatrix::Zero(nv, nv);
  for (int i = 0; i < nv; ++i) {
    CMatrix vi(s, nv);
    for (int j = 0; j < nv; ++j)
      vi.col(j) = numerics::commutator(c.matrices[static_cast<std::size_t>(i)], c.matrices[static_cast<std::size_t>(j)])
                      .reshaped();
    out.vhat += vi.adjoint() * vi;
    out.v.push_back(std::move(vi));
  }
  out.vhat = (out.vhat + out.vhat.adjoint()).eval() / 2.0;
  return out;
}

XiSelection select_xi(const CMatrix& vhat, double degeneracy_tol, std::uint64_t seed) {
  if (vhat.rows() != vhat.cols() || vhat.rows() == 0) throw std::invalid_argument("select_xi: Vhat must be square");
  const auto eig = numerics::hermitian_smallest_eigvec(vhat);
  XiSelection sel;
  sel.vhat = vhat;
  sel.lambda_min = eig.min_value;
  sel.lambda_max = eig.max_value;
  if (eig.min_value <= degeneracy_tol * std::max(1.0, eig.max_value)) {
    std::mt19937_64 rng(seed);
    CVector xi = complex_gaussian(vhat.rows(), rng);
    sel.xi = xi / xi.norm();
    sel.fallback = true;
  } else {
    sel.xi = eig.vector;
  }
  return sel;
}

ZeroExtraction extract_zeros(const CompanionSet& c, const CVector& xi) {
  if (xi.size() != c.nvars()) throw std::invalid_argument("extract_zeros: xi has the wrong length");
  const Eigen::Index r = c.size();
  CMatrix l = CMatrix::Zero(r, r);
  for (int j = 0; j < c.nvars(); ++j) l += xi[j] * c.matrices[static_cast<std::size_t>(j)];
  const auto schur = numerics::complex_schur(l);
  ZeroExtraction out;
  out.schur_diagonal = schur.t.diagonal();
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto q = schur.q.col(k);
    CVector v(c.nvars());
    for (int j = 0; j < c.nvars(); ++j) v[j] = q.dot(c.matrices[static_cast<std::size_t>(j)] * q);
    out.zeros.push_back(std::move(v));
  }
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = a + 1; b < r; ++b) gap = std::min(gap, std::abs(out.schur_diagonal[a] - out.schur_diagonal[b]));
  out.min_eigen_gap = gap;
  out.repeated_eigenvalue = r > 1 && gap <= 1e-8 * schur.t.norm();
  return out;
}

ZeroExtraction extract_zeros(const CompanionSet& c, const CVector& xi, const CMatrix& g, const MonomialBasis& basis) {
  ZeroExtraction out = extract_zeros(c, xi);
  for (const auto& v : out.zeros) out.generating_residuals.push_back(generating_residual(g, basis, v));
  return out;
}

}  // namespace symlra
