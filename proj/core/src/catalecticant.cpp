#include "symlra/catalecticant.hpp"

#include <limits>
#include <stdexcept>

namespace symlra {

CatMatrix build_cat(const SymTensor& f) {
  CatMatrix cat;
  cat.row_degree = f.order() / 2;
  cat.col_degree = f.order() - cat.row_degree;
  const auto rows = MonomialSet::shared(f.nvars(), cat.row_degree);
  const auto cols = MonomialSet::shared(f.nvars(), cat.col_degree);
  const auto& all = f.monomials();
  cat.matrix.resize(static_cast<Eigen::Index>(rows->size()), static_cast<Eigen::Index>(cols->size()));
  for (std::size_t i = 0; i < rows->size(); ++i)
    for (std::size_t j = 0; j < cols->size(); ++j)
      cat.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.at(all.rank((*rows)[i] + (*cols)[j]));
  return cat;
}

RankEstimate estimate_rank(const RVector& sv, double rel_tol) {
  for (Eigen::Index i = 1; i < sv.size(); ++i)
    if (sv[i] > sv[i - 1]) throw std::invalid_argument("estimate_rank: singular values must be nonincreasing");
  RankEstimate est;
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i)
    est.gap_ratios.push_back(sv[i + 1] > 0.0 ? sv[i] / sv[i + 1] : std::numeric_limits<double>::infinity());
  if (sv.size() == 0 || sv[0] <= 0.0) return est;
  const double threshold = rel_tol * sv[0];
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > threshold) ++r;
  est.rank = static_cast<int>(r);
  est.beyond_resolution = r == sv.size();
  return est;
}

}  // namespace symlra
