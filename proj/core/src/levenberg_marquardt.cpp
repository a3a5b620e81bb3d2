#include "symlra/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace symlra::numerics {

void LMConfig::validate() const {
  if (max_iterations <= 0 || max_residual_evaluations <= 0 || !(gradient_tolerance > 0.0) ||
      !(step_tolerance > 0.0) || !(initial_damping > 0.0))
    throw std::invalid_argument("LMConfig: all settings must be positive");
}

std::string_view to_string(LMStatus s) {
  switch (s) {
    case LMStatus::converged_gradient: return "converged-gradient";
    case LMStatus::converged_step: return "converged-step";
    case LMStatus::max_iterations: return "max-iterations";
    case LMStatus::max_evaluations: return "max-evaluations";
  }
  return "unknown";
}

namespace {

bool all_finite(const RVector& v) { return v.allFinite(); }

}  // namespace

LMResult levenberg_marquardt(const ResidualFn& residual, const NormalEquationsFn& normal, const RVector& x0,
                             const LMConfig& cfg) {
  cfg.validate();
  LMResult out;
  RVector x = x0;
  RVector r = residual(x);
  out.evaluations = 1;
  if (!all_finite(r)) throw std::domain_error("levenberg_marquardt: non-finite residual at the starting point");
  double cost = r.squaredNorm();
  out.initial_residual_norm = std::sqrt(cost);

  auto finish = [&](LMStatus s) {
    out.x = x;
    out.residual_norm = std::sqrt(cost);
    out.status = s;
    return out;
  };
  if (cost == 0.0 || x.size() == 0) return finish(LMStatus::converged_gradient);

  NormalEquations ne = normal(x, r);
  // Marquardt scaling: damping proportional to the largest diagonal of J^T J
  // seen so far in each coordinate.
  RVector scale = ne.jtj.diagonal();
  const double floor = 1e-12 * std::max(scale.maxCoeff(), 1e-300);
  scale = scale.cwiseMax(floor);
  double mu = cfg.initial_damping;
  double nu = 2.0;

  while (true) {
    if (ne.jtr.lpNorm<Eigen::Infinity>() <= cfg.gradient_tolerance * std::max(1.0, cost))
      return finish(LMStatus::converged_gradient);
    if (out.iterations >= cfg.max_iterations) return finish(LMStatus::max_iterations);
    if (out.evaluations >= cfg.max_residual_evaluations) return finish(LMStatus::max_evaluations);
    ++out.iterations;

    RMatrix damped = ne.jtj;
    damped.diagonal() += mu * scale;
    Eigen::LLT<RMatrix> llt(damped);
    if (llt.info() != Eigen::Success) {
      mu *= nu;
      nu *= 2.0;
      continue;
    }
    const RVector step = llt.solve(-ne.jtr);
    const bool tiny = step.norm() <= cfg.step_tolerance * (x.norm() + cfg.step_tolerance);

    const RVector xn = x + step;
    const RVector rn = residual(xn);
    ++out.evaluations;
    const double cost_new = all_finite(rn) ? rn.squaredNorm() : INFINITY;
    // Badly scaled problems can still make real progress with tiny steps.
    if (tiny && !(cost_new < (1.0 - 1e-8) * cost)) {
      if (cost_new < cost) {
        x = xn;
        cost = cost_new;
      }
      return finish(LMStatus::converged_step);
    }
    // Predicted decrease of |r|^2 under the damped linear model.
    const double predicted = mu * step.dot(scale.cwiseProduct(step)) - step.dot(ne.jtr);
    const double rho = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;
    if (cost_new < cost && rho > 0.0) {
      x = xn;
      r = rn;
      cost = cost_new;
      if (cost == 0.0) return finish(LMStatus::converged_gradient);
      ne = normal(x, r);
      scale = scale.cwiseMax(ne.jtj.diagonal());
      const double t = 2.0 * rho - 1.0;
      mu *= std::max(1.0 / 3.0, 1.0 - t * t * t);
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu)) return finish(LMStatus::converged_step);
    }
  }
}

LMResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, const RVector& x0,
                             const LMConfig& cfg) {
  NormalEquationsFn normal = [&](const RVector& x, const RVector& r) {
    const RMatrix j = jacobian(x);
    NormalEquations ne;
    ne.jtj = RMatrix::Zero(j.cols(), j.cols());
    ne.jtj.selfadjointView<Eigen::Lower>().rankUpdate(j.transpose());
    ne.jtj = ne.jtj.selfadjointView<Eigen::Lower>();
    ne.jtr = j.transpose() * r;
    return ne;
  };
  return levenberg_marquardt(residual, normal, x0, cfg);
}

RMatrix finite_difference_jacobian(const ResidualFn& residual, const RVector& x, double h) {
  const RVector r0 = residual(x);
  RMatrix j(r0.size(), x.size());
  RVector xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(x[k]));
    xp[k] = x[k] + step;
    const RVector rp = residual(xp);
    xp[k] = x[k] - step;
    const RVector rm = residual(xp);
    xp[k] = x[k];
    j.col(k) = (rp - rm) / (2.0 * step);
  }
  return j;
}

}  // namespace symlra::numerics
