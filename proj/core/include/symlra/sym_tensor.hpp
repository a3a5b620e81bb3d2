#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "symlra/monomial.hpp"
#include "symlra/types.hpp"

namespace symlra {

/// Complex symmetric tensor of order m over C^n, stored as one value per
/// exponent alpha in N^{n-1}_m (graded lex order).
///
/// F_alpha equals F_{i1..im} whenever x^alpha = x_{i1-1} ... x_{im-1}
/// with x_0 = 1. Instances are immutable.
class SymTensor {
 public:
  /// Zero tensor.
  SymTensor(int n, int order);
  /// Takes ownership of compact values; throws on size mismatch or
  /// non-finite entries.
  SymTensor(int n, int order, CVector values);

  int dim() const { return n_; }
  int order() const { return m_; }
  int nvars() const { return n_ - 1; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  const MonomialSet& monomials() const { return *monomials_; }
  const CVector& values() const { return values_; }

  Complex operator[](const Exponent& alpha) const { return values_[monomials_->rank(alpha)]; }
  Complex at(std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

  /// sqrt(multinomial(alpha)) per compact entry; the weighted Euclidean
  /// norm of the compact vector is the Hilbert-Schmidt norm.
  const RVector& sqrt_weights() const;

  friend SymTensor operator+(const SymTensor& a, const SymTensor& b);
  friend SymTensor operator-(const SymTensor& a, const SymTensor& b);
  friend SymTensor operator*(Complex c, const SymTensor& a);

 private:
  int n_;
  int m_;
  std::shared_ptr<const MonomialSet> monomials_;
  CVector values_;
};

/// Dense n^m array, row-major over the 0-based tuple (i1, ..., im).
struct FullTensor {
  int n = 0;
  int order = 0;
  std::vector<Complex> data;

  FullTensor() = default;
  FullTensor(int n_, int m_);

  std::size_t flat_index(std::span<const int> idx) const;
  std::vector<int> tuple(std::size_t flat) const;
  Complex& operator()(std::span<const int> idx) { return data[flat_index(idx)]; }
  Complex operator()(std::span<const int> idx) const { return data[flat_index(idx)]; }
};

/// Exponent of a 0-based index tuple: alpha_j counts the entries equal to j.
Exponent exponent_of(std::span<const int> idx, int n);

/// Checks symmetry to relative tolerance 1e-12 and compacts. Throws
/// std::invalid_argument naming the offending index pair otherwise.
SymTensor compact_from_full(const FullTensor& full, double rel_tol = 1e-12);
FullTensor full_from_compact(const SymTensor& f);

/// u^{(x)m}; entry alpha is u_1^{alpha_0} u_2^{alpha_1} ... u_n^{alpha_nbar}.
SymTensor rank1_power(const CVector& u, int order);

double hs_norm(const SymTensor& f);

/// F with A applied along every mode: sum u_i^{(x)m} maps to sum (A u_i)^{(x)m}.
struct TransformResult {
  SymTensor tensor;
  double condition;
};
/// Throws std::invalid_argument if A is not square n x n or is numerically singular.
TransformResult linear_transform(const SymTensor& f, const CMatrix& a);

}  // namespace symlra
