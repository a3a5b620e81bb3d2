#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "symlra/sym_tensor.hpp"

namespace symlra {

/// sum_i u_i^{(x)m}, the u_i all of length n.
struct Decomposition {
  int n = 0;
  int order = 0;
  std::vector<CVector> vectors;

  Decomposition() = default;
  Decomposition(int n_, int m_, std::vector<CVector> v = {});

  std::size_t rank() const { return vectors.size(); }
};

/// u_i = lambda_i^{1/m} (1, v_i).
struct Dehomogenized {
  std::vector<Complex> lambda;
  std::vector<CVector> points;
};

/// Requires every first coordinate to be nonzero (std::domain_error otherwise).
Dehomogenized dehomogenize(const Decomposition& d);

/// Principal m-th root: arg in (-pi, pi], root = exp((ln|z| + i arg z) / m).
Complex principal_root(Complex z, int m);

SymTensor from_decomposition(const Decomposition& d);

/// Rank-r instance with complex standard normal u_i. With tau the i-th
/// term (1-based) carries weight tau^i, folded into the returned vectors.
struct RandomInstance {
  SymTensor tensor;
  Decomposition truth;
};
RandomInstance random_rank_r(int n, int order, int r, std::uint64_t seed,
                             std::optional<double> tau = std::nullopt);

/// F + E with E a random symmetric tensor scaled so hs_norm(E) == eps.
SymTensor perturb(const SymTensor& f, double eps, std::uint64_t seed);

/// Complex standard normal vector: independent N(0,1) real and imaginary parts.
template <class Rng>
CVector complex_gaussian(Eigen::Index len, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVector v(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

}  // namespace symlra
