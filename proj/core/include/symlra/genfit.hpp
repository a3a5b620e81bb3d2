#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symlra/levenberg_marquardt.hpp"
#include "symlra/sym_tensor.hpp"

namespace symlra {

/// B0: the first r monomials in graded lex order. B1: the border
/// (B0 u x_1 B0 u ... u x_nbar B0) \ B0, also in graded lex order.
class MonomialBasis {
 public:
  MonomialBasis(int n, int order, int r);

  int dim() const { return n_; }
  int order() const { return m_; }
  int nvars() const { return n_ - 1; }
  int rank() const { return static_cast<int>(b0_.size()); }

  const std::vector<Exponent>& b0() const { return b0_; }
  const std::vector<Exponent>& b1() const { return b1_; }

  std::optional<std::size_t> index_in_b0(const Exponent& e) const;
  std::optional<std::size_t> index_in_b1(const Exponent& e) const;

 private:
  std::optional<std::size_t> lookup(const std::vector<int>& pos, const Exponent& e) const;

  int n_;
  int m_;
  std::vector<Exponent> b0_;
  std::vector<Exponent> b1_;
  std::shared_ptr<const MonomialSet> universe_;  // degree <= m + 1
  std::vector<int> b0_pos_;
  std::vector<int> b1_pos_;
};

/// Throws std::invalid_argument unless n >= 2 and 1 <= r <= binom(n-1+m, m).
MonomialBasis build_basis(int n, int order, int r);

/// A[F, alpha](gamma, beta) = F_{beta+gamma}, b[F, alpha](gamma) = F_{alpha+gamma}
/// for gamma in N^{nbar}_{m-|alpha|} (graded lex) and beta in B0.
struct LinearSystem {
  CMatrix a;
  CVector b;
};
LinearSystem assemble_system(const SymTensor& f, const Exponent& alpha, const MonomialBasis& basis);

/// Least-squares generating matrix, one column per alpha in B1:
/// G(omega)(:, alpha) = g_alpha + N_alpha omega_alpha.
struct GenMatrix {
  std::vector<CVector> particular;
  std::vector<CMatrix> null_bases;
  std::vector<Eigen::Index> omega_offset;
  std::vector<double> residual_norms;  // |A g_alpha - b| per column
  std::vector<double> rhs_norms;       // |b| per column
  Eigen::Index omega_size = 0;

  bool has_free_parameters() const { return omega_size > 0; }
  /// r x |B1|
  CMatrix assemble(const CVector& omega) const;
  CMatrix assemble() const { return assemble(CVector::Zero(omega_size)); }
};

GenMatrix solve_generating(const SymTensor& f, const MonomialBasis& basis,
                           std::optional<double> rank_tol = std::nullopt);

/// Multiplication-by-x_i matrices on span(B0), indexed B0 x B0.
struct CompanionSet {
  std::vector<CMatrix> matrices;

  int nvars() const { return static_cast<int>(matrices.size()); }
  Eigen::Index size() const { return matrices.empty() ? 0 : matrices.front().rows(); }
};

CompanionSet companion(const CMatrix& g, const MonomialBasis& basis);

/// vec([M_i, M_j]) for all i < j, pairs in lexicographic order, each
/// commutator column-major.
CVector commutator_residuals(const CompanionSet& c);

/// max over alpha in B1 of |phi[G, alpha](v)|.
double generating_residual(const CMatrix& g, const MonomialBasis& basis, const CVector& v);

/// Commutator residual as a function of omega. The map is holomorphic, so
/// the real-lifted Jacobian is the lift of the complex one.
class CommutatorProblem {
 public:
  CommutatorProblem(const MonomialBasis& basis, const GenMatrix& gen);

  Eigen::Index num_parameters() const { return gen_->omega_size; }

  CVector residual(const CVector& omega) const;
  CMatrix jacobian(const CVector& omega) const;

  RVector residual_real(const RVector& x) const;
  RMatrix jacobian_real(const RVector& x) const;
  /// Assembled per commutator pair; skips the parameters a pair does not touch.
  numerics::NormalEquations normal_equations(const RVector& x, const RVector& r) const;

 private:
  struct Touch {
    int var;
    Eigen::Index column;  // nu in B0
  };
  // d vec([M_i, M_j]) / d omega_k
  CVector pair_derivative(const CompanionSet& c, int i, int j, Eigen::Index k) const;

  const MonomialBasis* basis_;
  const GenMatrix* gen_;
  std::vector<CVector> direction_;        // null-space vector per parameter
  std::vector<std::vector<Touch>> touch_; // companion columns each parameter moves
  std::vector<std::pair<int, int>> pairs_;
};

struct OmegaFit {
  CVector omega;
  CMatrix g;  // G^ls = G(omega)
  double objective = 0.0;
  std::vector<double> start_objectives;
  std::vector<double> final_objectives;
  std::vector<numerics::LMStatus> statuses;
  std::size_t best_start = 0;
  /// False when no start reached an LM convergence criterion.
  bool converged = true;
};

/// omega = 0 first, then `restarts` seeded complex Gaussian points.
std::vector<CVector> omega_starts(const GenMatrix& gen, int restarts, std::uint64_t seed);

OmegaFit optimize_omega(const MonomialBasis& basis, const GenMatrix& gen, const numerics::LMConfig& cfg,
                        const std::vector<CVector>& starts);

OmegaFit optimize_omega(const MonomialBasis& basis, const GenMatrix& gen, const numerics::LMConfig& cfg,
                        int restarts = 0, std::uint64_t seed = 0);

}  // namespace symlra
