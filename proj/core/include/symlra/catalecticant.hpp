#pragma once

#include <vector>

#include "symlra/sym_tensor.hpp"

namespace symlra {

/// Most-square symmetric flattening: rows alpha with |alpha| <= floor(m/2),
/// columns beta with |beta| <= ceil(m/2), entry F_{alpha+beta}.
struct CatMatrix {
  int row_degree = 0;  // floor(m/2)
  int col_degree = 0;  // ceil(m/2)
  CMatrix matrix;

  /// The smaller matrix dimension; rank estimates never exceed it.
  Eigen::Index smaller_size() const { return std::min(matrix.rows(), matrix.cols()); }
};

CatMatrix build_cat(const SymTensor& f);

struct RankEstimate {
  int rank = 0;
  /// eta_k / eta_{k+1} for k = 1..len-1; +inf where eta_{k+1} == 0.
  std::vector<double> gap_ratios;
  /// The threshold was never met: every singular value is significant.
  bool beyond_resolution = false;
};

/// Smallest r with eta_{r+1} <= rel_tol * eta_1 (eta past the end is 0).
/// An all-zero spectrum gives r = 0. Throws std::invalid_argument when sv
/// is not nonincreasing.
RankEstimate estimate_rank(const RVector& sv, double rel_tol = 1e-6);

}  // namespace symlra
