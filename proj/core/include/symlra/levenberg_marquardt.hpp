#pragma once

#include <functional>
#include <string_view>

#include "symlra/types.hpp"

namespace symlra::numerics {

struct LMConfig {
  int max_iterations = 1000;
  int max_residual_evaluations = 10000;
  double gradient_tolerance = 1e-10;
  double step_tolerance = 1e-12;
  double initial_damping = 1e-3;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

enum class LMStatus { converged_gradient, converged_step, max_iterations, max_evaluations };

std::string_view to_string(LMStatus s);

struct LMResult {
  RVector x;
  double residual_norm = 0.0;
  double initial_residual_norm = 0.0;
  LMStatus status = LMStatus::max_iterations;
  int iterations = 0;
  int evaluations = 0;
};

using ResidualFn = std::function<RVector(const RVector&)>;
using JacobianFn = std::function<RMatrix(const RVector&)>;

/// J^T J and J^T r at x, given r = residual(x).
struct NormalEquations {
  RMatrix jtj;
  RVector jtr;
};
using NormalEquationsFn = std::function<NormalEquations(const RVector& x, const RVector& r)>;

/// Minimizes |residual(x)|^2. Only strictly decreasing steps are accepted.
/// Steps solve (J^T J + mu D) dx = -J^T r with D the running maximum of
/// diag(J^T J); mu starts at initial_damping.
///
/// Stops on |J^T r|_inf <= gradient_tolerance * max(1, |r|^2) (also when
/// r == 0), on |dx| <= step_tolerance * (|x| + step_tolerance) unless that
/// step still lowers |r|^2 by a relative 1e-8, or when an iteration or
/// evaluation budget runs out. Throws std::domain_error when
/// the residual at x0 is not finite.
LMResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, const RVector& x0,
                             const LMConfig& cfg = {});

/// Same iteration for callers that can assemble J^T J more cheaply than J.
LMResult levenberg_marquardt(const ResidualFn& residual, const NormalEquationsFn& normal, const RVector& x0,
                             const LMConfig& cfg = {});

/// Central-difference Jacobian, used to cross-check analytic ones.
RMatrix finite_difference_jacobian(const ResidualFn& residual, const RVector& x, double h = 1e-6);

}  // namespace symlra::numerics
