#pragma once

#include <vector>

#include "symlra/decomposition.hpp"

namespace symlra {

/// min over zeta with zeta^m = 1 of |a - zeta b|.
double phase_distance(const CVector& a, const CVector& b, int order);

/// Minimum-cost assignment (Hungarian method) on a square cost matrix;
/// returns the column assigned to each row.
std::vector<int> min_cost_assignment(const RMatrix& cost);

struct Matching {
  std::vector<int> assignment;  // b index for each a index
  double max_distance = 0.0;    // largest matched phase_distance
  double total_distance = 0.0;  // sum of matched phase_distance
};

/// Aligns b to a up to permutation and m-th roots of unity. Throws
/// std::invalid_argument on shape or rank mismatch.
Matching match_decompositions(const Decomposition& a, const Decomposition& b);

/// max_distance of the matching; infinity when the ranks differ.
double decomposition_distance(const Decomposition& a, const Decomposition& b);

/// Matches point sets (no phase freedom); max matched Euclidean distance.
double point_set_distance(const std::vector<CVector>& a, const std::vector<CVector>& b);

}  // namespace symlra
