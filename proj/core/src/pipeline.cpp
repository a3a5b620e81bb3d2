#include "symlra/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

#include "symlra/catalecticant.hpp"
#include "symlra/matching.hpp"
#include "symlra/numerics.hpp"

namespace symlra {

namespace {

CVector homogenize(const CVector& v) {
  CVector h(v.size() + 1);
  h[0] = 1.0;
  h.tail(v.size()) = v;
  return h;
}

CMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j) a.col(j) = complex_gaussian(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

bool is_real(const SymTensor& f) { return f.values().imag().cwiseAbs().maxCoeff() == 0.0; }

// True when some u_i is not a real vector times an m-th root of unity.
bool has_nonreal_term(const Decomposition& d) {
  for (const auto& u : d.vectors) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < d.order; ++k) {
      const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / d.order);
      best = std::min(best, (zeta * u).imag().norm());
    }
    if (best > 1e-8 * std::max(1.0, u.norm())) return true;
  }
  return false;
}

int clamp_rank(int r, int n, int m) {
  const auto limit = static_cast<int>(std::min<std::uint64_t>(binomial(n - 1 + m, m), 1u << 30));
  return std::clamp(r, 1, limit);
}

ApproxResult run(const SymTensor& f, const ApproxOptions& opts, std::optional<std::size_t> start_index, bool shuffle) {
  const auto t0 = std::chrono::steady_clock::now();
  if (f.dim() < 2) throw std::invalid_argument("approximate: tensor dimension n must be >= 2");
  ApproxResult out;
  out.norm_f = hs_norm(f);

  CMatrix q;
  SymTensor work = f;
  if (shuffle) {
    q = random_unitary(f.dim(), opts.seed ^ 0x5eedf00dULL);
    work = linear_transform(f, q).tensor;
    out.coordinate_shuffled = true;
    out.warnings.push_back("coordinate change applied");
  }

  if (opts.rank) {
    if (*opts.rank < 1) throw std::invalid_argument("approximate: rank must be >= 1");
    out.rank = *opts.rank;
  } else {
    const auto est = estimate_rank(numerics::singular_values(build_cat(work).matrix), opts.rank_tol);
    out.rank = clamp_rank(est.rank, f.dim(), f.order());
    out.rank_estimated = true;
  }

  const MonomialBasis basis(f.dim(), f.order(), out.rank);
  const GenMatrix gen = solve_generating(work, basis, opts.ls_rank_tol);
  auto starts = omega_starts(gen, opts.restarts, opts.seed);
  if (start_index) {
    if (*start_index >= starts.size()) throw std::invalid_argument("approximate: start index out of range");
    starts = {starts[*start_index]};
  }
  const OmegaFit fit = optimize_omega(basis, gen, opts.omega_lm, starts);
  out.g = fit.g;
  out.commutator_objective = fit.objective;
  out.omega_parameters = gen.omega_size;
  out.omega_statuses = fit.statuses;
  out.omega_converged = fit.converged;
  if (!fit.converged) out.warnings.push_back("commutator fit reached an iteration or evaluation limit");

  out.companions = companion(fit.g, basis);
  const VHat vh = build_vhat(out.companions);
  const XiSelection sel = select_xi(vh.vhat, opts.xi_degeneracy_tol, opts.seed + start_index.value_or(0));
  out.xi_fallback = sel.fallback;
  const ZeroExtraction ext = extract_zeros(out.companions, sel.xi, fit.g, basis);
  out.zeros = ext.zeros;
  out.repeated_eigenvalue = ext.repeated_eigenvalue;
  out.min_eigen_gap = ext.min_eigen_gap;
  out.generating_residuals = ext.generating_residuals;
  if (ext.repeated_eigenvalue) out.warnings.push_back("repeated eigenvalue in the Schur form");

  if (!shuffle && opts.auto_shuffle) {
    double big = 0.0;
    bool finite = true;
    for (const auto& v : out.zeros) {
      finite = finite && v.allFinite();
      if (v.size() > 0) big = std::max(big, v.cwiseAbs().maxCoeff());
    }
    if (!finite || big > opts.shuffle_threshold) return run(f, opts, start_index, true);
  }

  out.lambda = solve_lambda(work, out.zeros);
  Decomposition xgp = build_xgp(out.lambda, out.zeros, f.order());
  Decomposition xopt = xgp;
  if (!opts.skip_refine) {
    const RefineResult ref = refine(work, xgp, opts.refine_lm);
    xopt = ref.x;
    out.refine_status = ref.status;
    out.refine_iterations = ref.iterations;
    if (ref.failed) out.warnings.push_back("refinement failed; keeping the starting point");
  }
  if (shuffle) {
    const CMatrix qh = q.adjoint();
    for (auto& u : xgp.vectors) u = qh * u;
    for (auto& u : xopt.vectors) u = qh * u;
  }
  out.xgp = std::move(xgp);
  out.xopt = std::move(xopt);
  out.err_gp = hs_norm(f - from_decomposition(out.xgp));
  out.err_opt = hs_norm(f - from_decomposition(out.xopt));
  if (is_real(f) && has_nonreal_term(out.xopt)) out.warnings.push_back("real tensor gave a non-real decomposition");
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

CVector solve_lambda(const SymTensor& f, const std::vector<CVector>& v) {
  const RVector& w = f.sqrt_weights();
  CMatrix design(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].size() != f.nvars()) throw std::invalid_argument("solve_lambda: point has the wrong length");
    if (!v[i].allFinite()) throw std::invalid_argument("solve_lambda: point is not finite");
    design.col(static_cast<Eigen::Index>(i)) = w.cwiseProduct(rank1_power(homogenize(v[i]), f.order()).values());
  }
  const CVector rhs = w.cwiseProduct(f.values());
  return numerics::minnorm_least_squares(design, rhs).x;
}

Decomposition build_xgp(const CVector& lambda, const std::vector<CVector>& v, int order) {
  if (static_cast<std::size_t>(lambda.size()) != v.size())
    throw std::invalid_argument("build_xgp: lambda and point counts differ");
  if (v.empty()) throw std::invalid_argument("build_xgp: no points");
  Decomposition d(static_cast<int>(v.front().size()) + 1, order);
  for (std::size_t i = 0; i < v.size(); ++i)
    d.vectors.push_back(principal_root(lambda[static_cast<Eigen::Index>(i)], order) * homogenize(v[i]));
  return d;
}

SymmetricFitProblem::SymmetricFitProblem(const SymTensor& f, int rank) : f_(&f), rank_(rank) {
  if (rank < 1) throw std::invalid_argument("SymmetricFitProblem: rank must be >= 1");
  for (const auto& alpha : f.monomials()) {
    std::vector<std::pair<int, int>> fac;
    if (f.order() - alpha.total() > 0) fac.emplace_back(0, f.order() - alpha.total());
    for (int k = 0; k < alpha.nvars(); ++k)
      if (alpha[static_cast<std::size_t>(k)] > 0) fac.emplace_back(k + 1, alpha[static_cast<std::size_t>(k)]);
    factors_.push_back(std::move(fac));
  }
}

CVector SymmetricFitProblem::pack(const Decomposition& d) const {
  if (static_cast<int>(d.rank()) != rank_ || d.n != f_->dim()) throw std::invalid_argument("pack: shape mismatch");
  CVector z(num_parameters());
  for (int i = 0; i < rank_; ++i) z.segment(static_cast<Eigen::Index>(i) * d.n, d.n) = d.vectors[static_cast<std::size_t>(i)];
  return z;
}

Decomposition SymmetricFitProblem::unpack(const CVector& z) const {
  const int n = f_->dim();
  Decomposition d(n, f_->order());
  for (int i = 0; i < rank_; ++i) d.vectors.push_back(z.segment(static_cast<Eigen::Index>(i) * n, n));
  return d;
}

CVector SymmetricFitProblem::residual(const CVector& z) const {
  const int n = f_->dim();
  const RVector& w = f_->sqrt_weights();
  CVector r(static_cast<Eigen::Index>(f_->size()));
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    Complex s = 0.0;
    for (int i = 0; i < rank_; ++i) {
      Complex p = 1.0;
      for (const auto& [c, e] : factors_[a]) p *= std::pow(z[static_cast<Eigen::Index>(i) * n + c], e);
      s += p;
    }
    const auto ai = static_cast<Eigen::Index>(a);
    r[ai] = w[ai] * (s - f_->at(a));
  }
  return r;
}

CMatrix SymmetricFitProblem::jacobian(const CVector& z) const {
  const int n = f_->dim();
  const RVector& w = f_->sqrt_weights();
  CMatrix j = CMatrix::Zero(static_cast<Eigen::Index>(f_->size()), num_parameters());
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    const auto& fac = factors_[a];
    const auto ai = static_cast<Eigen::Index>(a);
    for (int i = 0; i < rank_; ++i) {
      const Eigen::Index base = static_cast<Eigen::Index>(i) * n;
      for (std::size_t t = 0; t < fac.size(); ++t) {
        Complex d = static_cast<double>(fac[t].second) * std::pow(z[base + fac[t].first], fac[t].second - 1);
        for (std::size_t o = 0; o < fac.size(); ++o)
          if (o != t) d *= std::pow(z[base + fac[o].first], fac[o].second);
        j(ai, base + fac[t].first) = w[ai] * d;
      }
    }
  }
  return j;
}

RVector SymmetricFitProblem::residual_real(const RVector& x) const {
  return numerics::stack_complex(residual(numerics::unstack_complex(x)));
}

RMatrix SymmetricFitProblem::jacobian_real(const RVector& x) const {
  return numerics::lift_holomorphic_jacobian(jacobian(numerics::unstack_complex(x)));
}

RefineResult refine(const SymTensor& f, const Decomposition& start, const numerics::LMConfig& cfg) {
  if (start.n != f.dim() || start.order != f.order()) throw std::invalid_argument("refine: shape mismatch");
  RefineResult out;
  out.x = start;
  out.start_error = hs_norm(f - from_decomposition(start));
  out.error = out.start_error;
  if (start.rank() == 0) return out;
  const SymmetricFitProblem prob(f, static_cast<int>(start.rank()));
  const numerics::ResidualFn res = [&](const RVector& x) { return prob.residual_real(x); };
  const numerics::JacobianFn jac = [&](const RVector& x) { return prob.jacobian_real(x); };
  try {
    const auto lm = numerics::levenberg_marquardt(res, jac, numerics::stack_complex(prob.pack(start)), cfg);
    out.status = lm.status;
    out.iterations = lm.iterations;
    Decomposition x = prob.unpack(numerics::unstack_complex(lm.x));
    const double err = hs_norm(f - from_decomposition(x));
    if (err <= out.start_error) {
      out.x = std::move(x);
      out.error = err;
    }
  } catch (const std::domain_error&) {
    out.failed = true;
  }
  return out;
}

ApproxResult approximate(const SymTensor& f, const ApproxOptions& opts) {
  return run(f, opts, std::nullopt, opts.coordinate_shuffle);
}

ApproxResult approximate_from_start(const SymTensor& f, const ApproxOptions& opts, std::size_t start_index) {
  return run(f, opts, start_index, opts.coordinate_shuffle);
}

DecomposeResult decompose(const SymTensor& f, const DecomposeOptions& opts) {
  if (opts.approx.restarts < 0) throw std::invalid_argument("decompose: restarts must be >= 0");
  DecomposeResult out;
  const double norm_f = hs_norm(f);
  const double threshold = opts.residual_tol * (1.0 + norm_f);
  const double rel_scale = norm_f > 0.0 ? norm_f : 1.0;
  bool have_best = false;
  for (int k = 0; k <= opts.approx.restarts; ++k) {
    ApproxResult res = approximate_from_start(f, opts.approx, static_cast<std::size_t>(k));
    ++out.attempts;
    const bool ok = res.err_opt <= threshold;
    if (ok) {
      out.success = true;
      bool fresh = true;
      for (const auto& d : out.decompositions) {
        double scale = 0.0;
        for (const auto& u : d.vectors) scale = std::max(scale, u.norm());
        for (const auto& u : res.xopt.vectors) scale = std::max(scale, u.norm());
        if (decomposition_distance(d, res.xopt) <= opts.distinct_rel_distance * scale) fresh = false;
      }
      if (fresh) {
        out.decompositions.push_back(res.xopt);
        out.relative_residuals.push_back(res.err_opt / rel_scale);
      }
    }
    const bool deterministic = res.omega_parameters == 0 && !res.xi_fallback;
    if (!have_best || res.err_opt < out.best.err_opt) {
      out.best = std::move(res);
      have_best = true;
    }
    if ((ok && !opts.distinct) || deterministic) break;
  }
  out.best_error = out.best.err_opt;
  out.best_relative_residual = out.best.err_opt / rel_scale;
  return out;
}

}  // namespace symlra
