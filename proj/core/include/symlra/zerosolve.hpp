#pragma once

#include <cstdint>
#include <vector>

#include "symlra/genfit.hpp"

namespace symlra {

struct VHat {
  CMatrix vhat;             // nbar x nbar, Hermitian PSD
  std::vector<CMatrix> v;   // V_i = [vec[M_i, M_1] ... vec[M_i, M_nbar]]
};

/// xi^* Vhat xi = sum_i |[M_i, L(xi)]|_F^2 with L(xi) = sum_j xi_j M_j.
VHat build_vhat(const CompanionSet& c);

struct XiSelection {
  CVector xi;  // unit length
  CMatrix vhat;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool fallback = false;
};

/// Eigenvector of the smallest eigenvalue, or a seeded random unit vector
/// when lambda_min <= degeneracy_tol * max(1, lambda_max).
XiSelection select_xi(const CMatrix& vhat, double degeneracy_tol = 1e-10, std::uint64_t seed = 0);

struct ZeroExtraction {
  std::vector<CVector> zeros;  // r points in C^nbar
  CVector schur_diagonal;
  double min_eigen_gap = 0.0;
  bool repeated_eigenvalue = false;
  /// max over B1 of |phi[G, alpha](v_i)| per zero; empty when G was not given.
  std::vector<double> generating_residuals;
};

/// Complex Schur form of L(xi); v_i = (q_i^* M_1 q_i, ..., q_i^* M_nbar q_i).
ZeroExtraction extract_zeros(const CompanionSet& c, const CVector& xi);

/// Also fills the generating-polynomial residual diagnostics.
ZeroExtraction extract_zeros(const CompanionSet& c, const CVector& xi, const CMatrix& g, const MonomialBasis& basis);

}  // namespace symlra
