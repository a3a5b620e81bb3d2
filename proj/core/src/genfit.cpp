#include "symlra/genfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "symlra/decomposition.hpp"
#include "symlra/numerics.hpp"

namespace symlra {

namespace {

Complex monomial_value(const CVector& v, const Exponent& e) {
  Complex out(1.0, 0.0);
  for (int k = 0; k < e.nvars(); ++k)
    for (int p = 0; p < e[k]; ++p) out *= v[k];
  return out;
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int order, int r) : n_(n), m_(order) {
  if (n < 2) throw std::invalid_argument("generating basis needs n >= 2");
  if (order < 1) throw std::invalid_argument("generating basis needs order >= 1");
  const auto limit = binomial(n - 1 + order, order);
  if (r < 1 || static_cast<std::uint64_t>(r) > limit)
    throw std::invalid_argument("rank " + std::to_string(r) + " out of range [1, " + std::to_string(limit) +
                                "] for n = " + std::to_string(n) + ", m = " + std::to_string(order));
  const int nv = n - 1;
  universe_ = MonomialSet::shared(nv, order + 1);
  b0_pos_.assign(universe_->size(), -1);
  b1_pos_.assign(universe_->size(), -1);
  for (int k = 0; k < r; ++k) {
    b0_.push_back((*universe_)[static_cast<std::size_t>(k)]);
    b0_pos_[static_cast<std::size_t>(k)] = k;
  }
  std::vector<std::size_t> border;
  for (const auto& mu : b0_)
    for (int i = 0; i < nv; ++i) {
      const std::size_t pos = universe_->rank(mu + Exponent::unit(nv, i));
      if (b0_pos_[pos] < 0) border.push_back(pos);
    }
  std::sort(border.begin(), border.end());
  border.erase(std::unique(border.begin(), border.end()), border.end());
  for (std::size_t pos : border) {
    b1_pos_[pos] = static_cast<int>(b1_.size());
    b1_.push_back((*universe_)[pos]);
  }
}

std::optional<std::size_t> MonomialBasis::lookup(const std::vector<int>& pos, const Exponent& e) const {
  if (e.nvars() != nvars() || e.total() > m_ + 1) return std::nullopt;
  const int p = pos[universe_->rank(e)];
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

std::optional<std::size_t> MonomialBasis::index_in_b0(const Exponent& e) const { return lookup(b0_pos_, e); }
std::optional<std::size_t> MonomialBasis::index_in_b1(const Exponent& e) const { return lookup(b1_pos_, e); }

MonomialBasis build_basis(int n, int order, int r) { return MonomialBasis(n, order, r); }

LinearSystem assemble_system(const SymTensor& f, const Exponent& alpha, const MonomialBasis& basis) {
  if (f.dim() != basis.dim() || f.order() != basis.order())
    throw std::invalid_argument("assemble_system: tensor shape does not match the basis");
  const int m = f.order();
  const auto& b0 = basis.b0();
  LinearSystem sys;
  const int rest = m - alpha.total();
  if (rest < 0) {
    sys.a.resize(0, static_cast<Eigen::Index>(b0.size()));
    sys.b.resize(0);
    return sys;
  }
  const auto gammas = MonomialSet::shared(f.nvars(), rest);
  const auto rows = static_cast<Eigen::Index>(gammas->size());
  sys.a.resize(rows, static_cast<Eigen::Index>(b0.size()));
  sys.b.resize(rows);
  for (Eigen::Index g = 0; g < rows; ++g) {
    const Exponent& gamma = (*gammas)[static_cast<std::size_t>(g)];
    // |beta| <= |alpha| here, because B0 precedes B1 in degree order.
    for (std::size_t c = 0; c < b0.size(); ++c) {
      const Exponent e = b0[c] + gamma;
      sys.a(g, static_cast<Eigen::Index>(c)) = e.total() <= m ? f[e] : Complex(0.0);
    }
    sys.b[g] = f[alpha + gamma];
  }
  return sys;
}

CMatrix GenMatrix::assemble(const CVector& omega) const {
  if (omega.size() != omega_size) throw std::invalid_argument("GenMatrix::assemble: omega has the wrong length");
  const Eigen::Index r = particular.empty() ? 0 : particular.front().size();
  CMatrix g(r, static_cast<Eigen::Index>(particular.size()));
  for (std::size_t c = 0; c < particular.size(); ++c) {
    const auto k = null_bases[c].cols();
    g.col(static_cast<Eigen::Index>(c)) = particular[c];
    if (k > 0) g.col(static_cast<Eigen::Index>(c)) += null_bases[c] * omega.segment(omega_offset[c], k);
  }
  return g;
}

GenMatrix solve_generating(const SymTensor& f, const MonomialBasis& basis, std::optional<double> rank_tol) {
  GenMatrix gen;
  for (const auto& alpha : basis.b1()) {
    const LinearSystem sys = assemble_system(f, alpha, basis);
    auto sol = numerics::minnorm_least_squares(sys.a, sys.b, rank_tol);
    gen.residual_norms.push_back(sys.a.rows() > 0 ? (sys.a * sol.x - sys.b).norm() : 0.0);
    gen.rhs_norms.push_back(sys.b.norm());
    gen.omega_offset.push_back(gen.omega_size);
    gen.omega_size += sol.null.cols();
    gen.particular.push_back(std::move(sol.x));
    gen.null_bases.push_back(std::move(sol.null));
  }
  return gen;
}

CompanionSet companion(const CMatrix& g, const MonomialBasis& basis) {
  const auto r = static_cast<Eigen::Index>(basis.rank());
  if (g.rows() != r || g.cols() != static_cast<Eigen::Index>(basis.b1().size()))
    throw std::invalid_argument("companion: G must be |B0| x |B1|");
  const int nv = basis.nvars();
  CompanionSet c;
  c.matrices.assign(static_cast<std::size_t>(nv), CMatrix::Zero(r, r));
  for (int i = 0; i < nv; ++i) {
    const Exponent ei = Exponent::unit(nv, i);
    for (Eigen::Index nu = 0; nu < r; ++nu) {
      const Exponent shifted = basis.b0()[static_cast<std::size_t>(nu)] + ei;
      if (auto p = basis.index_in_b0(shifted))
        c.matrices[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(*p), nu) = 1.0;
      else
        c.matrices[static_cast<std::size_t>(i)].col(nu) = g.col(static_cast<Eigen::Index>(*basis.index_in_b1(shifted)));
    }
  }
  return c;
}

CVector commutator_residuals(const CompanionSet& c) {
  const int nv = c.nvars();
  const Eigen::Index s = c.size() * c.size();
  CVector out(s * nv * (nv - 1) / 2);
  Eigen::Index off = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      const CMatrix k = numerics::commutator(c.matrices[static_cast<std::size_t>(i)], c.matrices[static_cast<std::size_t>(j)]);
      out.segment(off, s) = k.reshaped();
      off += s;
    }
  return out;
}

double generating_residual(const CMatrix& g, const MonomialBasis& basis, const CVector& v) {
  if (v.size() != basis.nvars()) throw std::invalid_argument("generating_residual: point has the wrong length");
  CVector b0v(basis.rank());
  for (int k = 0; k < basis.rank(); ++k) b0v[k] = monomial_value(v, basis.b0()[static_cast<std::size_t>(k)]);
  double worst = 0.0;
  for (std::size_t c = 0; c < basis.b1().size(); ++c) {
    const Complex phi = (g.col(static_cast<Eigen::Index>(c)).array() * b0v.array()).sum() - monomial_value(v, basis.b1()[c]);
    worst = std::max(worst, std::abs(phi));
  }
  return worst;
}

CommutatorProblem::CommutatorProblem(const MonomialBasis& basis, const GenMatrix& gen) : basis_(&basis), gen_(&gen) {
  const int nv = basis.nvars();
  direction_.resize(static_cast<std::size_t>(gen.omega_size));
  touch_.resize(static_cast<std::size_t>(gen.omega_size));
  for (std::size_t c = 0; c < basis.b1().size(); ++c) {
    const Exponent& alpha = basis.b1()[c];
    std::vector<Touch> cols;
    for (int i = 0; i < nv; ++i) {
      if (alpha[static_cast<std::size_t>(i)] == 0) continue;
      if (auto nu = basis.index_in_b0(alpha - Exponent::unit(nv, i)))
        cols.push_back({i, static_cast<Eigen::Index>(*nu)});
    }
    for (Eigen::Index l = 0; l < gen.null_bases[c].cols(); ++l) {
      const auto k = static_cast<std::size_t>(gen.omega_offset[c] + l);
      direction_[k] = gen.null_bases[c].col(l);
      touch_[k] = cols;
    }
  }
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) pairs_.emplace_back(i, j);
}

CVector CommutatorProblem::residual(const CVector& omega) const {
  return commutator_residuals(companion(gen_->assemble(omega), *basis_));
}

CVector CommutatorProblem::pair_derivative(const CompanionSet& c, int i, int j, Eigen::Index k) const {
  // dM_v = n e_nu^T for each touched (v, nu); d[Mi,Mj] = dMi Mj - Mj dMi + Mi dMj - dMj Mi.
  const CVector& n = direction_[static_cast<std::size_t>(k)];
  const CMatrix& mi = c.matrices[static_cast<std::size_t>(i)];
  const CMatrix& mj = c.matrices[static_cast<std::size_t>(j)];
  const Eigen::Index r = mi.rows();
  CMatrix d = CMatrix::Zero(r, r);
  for (const auto& t : touch_[static_cast<std::size_t>(k)]) {
    if (t.var == i) {
      d.noalias() += n * mj.row(t.column);
      d.col(t.column) -= mj * n;
    } else if (t.var == j) {
      d.col(t.column) += mi * n;
      d.noalias() -= n * mi.row(t.column);
    }
  }
  return d.reshaped();
}

CMatrix CommutatorProblem::jacobian(const CVector& omega) const {
  const CompanionSet c = companion(gen_->assemble(omega), *basis_);
  const Eigen::Index s = c.size() * c.size();
  CMatrix jac = CMatrix::Zero(s * static_cast<Eigen::Index>(pairs_.size()), num_parameters());
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const auto [i, j] = pairs_[p];
    for (Eigen::Index k = 0; k < num_parameters(); ++k) {
      bool hit = false;
      for (const auto& t : touch_[static_cast<std::size_t>(k)]) hit = hit || t.var == i || t.var == j;
      if (hit) jac.block(static_cast<Eigen::Index>(p) * s, k, s, 1) = pair_derivative(c, i, j, k);
    }
  }
  return jac;
}

RVector CommutatorProblem::residual_real(const RVector& x) const {
  return numerics::stack_complex(residual(numerics::unstack_complex(x)));
}

RMatrix CommutatorProblem::jacobian_real(const RVector& x) const {
  return numerics::lift_holomorphic_jacobian(jacobian(numerics::unstack_complex(x)));
}

numerics::NormalEquations CommutatorProblem::normal_equations(const RVector& x, const RVector& r) const {
  const CVector omega = numerics::unstack_complex(x);
  const CVector rc = numerics::unstack_complex(r);
  const CompanionSet c = companion(gen_->assemble(omega), *basis_);
  const Eigen::Index s = c.size() * c.size();
  const Eigen::Index kk = num_parameters();
  CMatrix h = CMatrix::Zero(kk, kk);
  CVector jr = CVector::Zero(kk);
  std::vector<Eigen::Index> active;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const auto [i, j] = pairs_[p];
    active.clear();
    for (Eigen::Index k = 0; k < kk; ++k)
      for (const auto& t : touch_[static_cast<std::size_t>(k)])
        if (t.var == i || t.var == j) {
          active.push_back(k);
          break;
        }
    if (active.empty()) continue;
    const auto na = static_cast<Eigen::Index>(active.size());
    CMatrix jp(s, na);
    for (Eigen::Index a = 0; a < na; ++a) jp.col(a) = pair_derivative(c, i, j, active[static_cast<std::size_t>(a)]);
    CMatrix hp = CMatrix::Zero(na, na);
    hp.selfadjointView<Eigen::Lower>().rankUpdate(jp.adjoint());
    hp = hp.selfadjointView<Eigen::Lower>();
    const CVector gp = jp.adjoint() * rc.segment(static_cast<Eigen::Index>(p) * s, s);
    for (Eigen::Index a = 0; a < na; ++a) {
      const Eigen::Index ka = active[static_cast<std::size_t>(a)];
      jr[ka] += gp[a];
      for (Eigen::Index b = 0; b < na; ++b) h(ka, active[static_cast<std::size_t>(b)]) += hp(a, b);
    }
  }
  numerics::NormalEquations ne;
  ne.jtj.resize(2 * kk, 2 * kk);
  ne.jtj.topLeftCorner(kk, kk) = h.real();
  ne.jtj.topRightCorner(kk, kk) = -h.imag();
  ne.jtj.bottomLeftCorner(kk, kk) = h.imag();
  ne.jtj.bottomRightCorner(kk, kk) = h.real();
  ne.jtr = numerics::stack_complex(jr);
  return ne;
}

std::vector<CVector> omega_starts(const GenMatrix& gen, int restarts, std::uint64_t seed) {
  if (restarts < 0) throw std::invalid_argument("omega_starts: restarts must be >= 0");
  std::vector<CVector> out;
  out.push_back(CVector::Zero(gen.omega_size));
  std::mt19937_64 rng(seed);
  for (int k = 0; k < restarts; ++k) out.push_back(complex_gaussian(gen.omega_size, rng));
  return out;
}

OmegaFit optimize_omega(const MonomialBasis& basis, const GenMatrix& gen, const numerics::LMConfig& cfg,
                        const std::vector<CVector>& starts) {
  if (starts.empty()) throw std::invalid_argument("optimize_omega: no starting points");
  cfg.validate();
  const CommutatorProblem prob(basis, gen);
  OmegaFit fit;
  fit.objective = std::numeric_limits<double>::infinity();
  fit.converged = false;
  if (!gen.has_free_parameters()) {
    fit.omega = CVector::Zero(0);
    fit.g = gen.assemble();
    fit.objective = prob.residual(fit.omega).squaredNorm();
    fit.start_objectives.push_back(fit.objective);
    fit.final_objectives.push_back(fit.objective);
    fit.statuses.push_back(numerics::LMStatus::converged_gradient);
    fit.converged = true;
    return fit;
  }
  const numerics::ResidualFn res = [&](const RVector& x) { return prob.residual_real(x); };
  const numerics::NormalEquationsFn ne = [&](const RVector& x, const RVector& r) {
    return prob.normal_equations(x, r);
  };
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (starts[s].size() != gen.omega_size) throw std::invalid_argument("optimize_omega: start has the wrong length");
    const auto lm = numerics::levenberg_marquardt(res, ne, numerics::stack_complex(starts[s]), cfg);
    const double obj = lm.residual_norm * lm.residual_norm;
    fit.start_objectives.push_back(lm.initial_residual_norm * lm.initial_residual_norm);
    fit.final_objectives.push_back(obj);
    fit.statuses.push_back(lm.status);
    if (lm.status == numerics::LMStatus::converged_gradient || lm.status == numerics::LMStatus::converged_step)
      fit.converged = true;
    if (obj < fit.objective) {
      fit.objective = obj;
      fit.omega = numerics::unstack_complex(lm.x);
      fit.best_start = s;
    }
  }
  fit.g = gen.assemble(fit.omega);
  return fit;
}

OmegaFit optimize_omega(const MonomialBasis& basis, const GenMatrix& gen, const numerics::LMConfig& cfg,
                        int restarts, std::uint64_t seed) {
  return optimize_omega(basis, gen, cfg, omega_starts(gen, restarts, seed));
}

}  // namespace symlra
