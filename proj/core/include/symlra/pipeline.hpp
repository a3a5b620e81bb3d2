#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symlra/decomposition.hpp"
#include "symlra/genfit.hpp"
#include "symlra/levenberg_marquardt.hpp"
#include "symlra/zerosolve.hpp"

namespace symlra {

/// Minimizes |sum_i lambda_i (1, v_i)^{(x)m} - F| in the Hilbert-Schmidt norm
/// (minimum-norm lambda when the design is rank deficient).
CVector solve_lambda(const SymTensor& f, const std::vector<CVector>& v);

/// u_i = principal_root(lambda_i, m) * (1, v_i). No term is dropped.
Decomposition build_xgp(const CVector& lambda, const std::vector<CVector>& v, int order);

/// Residuals sqrt(w_alpha) (sum_i u_i^{(x)m} - F)_alpha as a function of the
/// stacked vectors (u_1; ...; u_r), holomorphic in u.
class SymmetricFitProblem {
 public:
  SymmetricFitProblem(const SymTensor& f, int rank);

  Eigen::Index num_parameters() const { return static_cast<Eigen::Index>(rank_) * f_->dim(); }

  CVector pack(const Decomposition& d) const;
  Decomposition unpack(const CVector& z) const;

  CVector residual(const CVector& z) const;
  CMatrix jacobian(const CVector& z) const;
  RVector residual_real(const RVector& x) const;
  RMatrix jacobian_real(const RVector& x) const;

 private:
  const SymTensor* f_;
  int rank_;
  // Nonzero (coordinate, power) pairs of each compact entry, coordinate 0 included.
  std::vector<std::vector<std::pair<int, int>>> factors_;
};

struct RefineResult {
  Decomposition x;
  double error = 0.0;
  double start_error = 0.0;
  numerics::LMStatus status = numerics::LMStatus::converged_gradient;
  int iterations = 0;
  bool failed = false;  // LM threw; x is the start
};

RefineResult refine(const SymTensor& f, const Decomposition& start, const numerics::LMConfig& cfg = {});

struct ApproxOptions {
  std::optional<int> rank;
  double rank_tol = 1e-6;                 // catalecticant estimate
  std::optional<double> ls_rank_tol;      // generating systems
  numerics::LMConfig omega_lm;
  numerics::LMConfig refine_lm;
  int restarts = 0;
  std::uint64_t seed = 0;
  double xi_degeneracy_tol = 1e-10;
  bool coordinate_shuffle = false;
  bool auto_shuffle = true;               // when some |v_i| exceeds shuffle_threshold
  double shuffle_threshold = 1e6;
  bool skip_refine = false;
};

struct ApproxResult {
  int rank = 0;
  bool rank_estimated = false;
  double norm_f = 0.0;

  Decomposition xgp;
  Decomposition xopt;
  double err_gp = 0.0;
  double err_opt = 0.0;

  // Intermediate quantities, in the working coordinates (see coordinate_shuffled).
  CMatrix g;
  CompanionSet companions;
  std::vector<CVector> zeros;
  CVector lambda;

  // Diagnostics.
  double commutator_objective = 0.0;
  Eigen::Index omega_parameters = 0;
  std::vector<numerics::LMStatus> omega_statuses;
  bool omega_converged = true;
  bool xi_fallback = false;
  bool repeated_eigenvalue = false;
  double min_eigen_gap = 0.0;
  std::vector<double> generating_residuals;
  numerics::LMStatus refine_status = numerics::LMStatus::converged_gradient;
  int refine_iterations = 0;
  bool coordinate_shuffled = false;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

ApproxResult approximate(const SymTensor& f, const ApproxOptions& opts = {});

/// As approximate, but the omega fit runs from the single starting point
/// omega_starts(gen, opts.restarts, opts.seed)[start_index].
ApproxResult approximate_from_start(const SymTensor& f, const ApproxOptions& opts, std::size_t start_index);

struct DecomposeOptions {
  ApproxOptions approx;
  double residual_tol = 1e-6;
  /// Keep going after the first success and collect every distinct decomposition.
  bool distinct = false;
  double distinct_rel_distance = 0.1;
};

struct DecomposeResult {
  bool success = false;
  std::vector<Decomposition> decompositions;
  std::vector<double> relative_residuals;  // err_opt / |F| per decomposition
  double best_error = 0.0;
  double best_relative_residual = 0.0;
  int attempts = 0;
  ApproxResult best;  // attempt with the smallest err_opt
};

/// Attempt k starts the omega fit from omega_starts(...)[k], k = 0..restarts.
/// Success: err_opt <= residual_tol * (1 + |F|).
DecomposeResult decompose(const SymTensor& f, const DecomposeOptions& opts = {});

}  // namespace symlra
