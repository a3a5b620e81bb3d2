#include "symlra/matching.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace symlra {

double phase_distance(const CVector& a, const CVector& b, int order) {
  if (a.size() != b.size()) throw std::invalid_argument("phase_distance: length mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < order; ++k) {
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / order);
    best = std::min(best, (a - zeta * b).norm());
  }
  return best;
}

std::vector<int> min_cost_assignment(const RMatrix& cost) {
  const auto n = static_cast<int>(cost.rows());
  if (cost.cols() != cost.rows()) throw std::invalid_argument("min_cost_assignment: cost must be square");
  // Potentials formulation, 1-based with a virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return row_to_col;
}

Matching match_decompositions(const Decomposition& a, const Decomposition& b) {
  if (a.n != b.n || a.order != b.order || a.rank() != b.rank())
    throw std::invalid_argument("match_decompositions: shape or rank mismatch");
  const auto r = static_cast<Eigen::Index>(a.rank());
  RMatrix cost(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      cost(i, j) = phase_distance(a.vectors[static_cast<std::size_t>(i)], b.vectors[static_cast<std::size_t>(j)], a.order);
  Matching m;
  m.assignment = min_cost_assignment(cost);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double d = cost(i, m.assignment[static_cast<std::size_t>(i)]);
    m.max_distance = std::max(m.max_distance, d);
    m.total_distance += d;
  }
  return m;
}

double decomposition_distance(const Decomposition& a, const Decomposition& b) {
  if (a.rank() != b.rank()) return std::numeric_limits<double>::infinity();
  return match_decompositions(a, b).max_distance;
}

double point_set_distance(const std::vector<CVector>& a, const std::vector<CVector>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto r = static_cast<Eigen::Index>(a.size());
  RMatrix cost(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      cost(i, j) = (a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)]).norm();
  const auto asg = min_cost_assignment(cost);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) worst = std::max(worst, cost(i, asg[static_cast<std::size_t>(i)]));
  return worst;
}

}  // namespace symlra
