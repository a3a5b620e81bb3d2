#include "symlra/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symlra {

Decomposition::Decomposition(int n_, int m_, std::vector<CVector> v) : n(n_), order(m_), vectors(std::move(v)) {
  for (const auto& u : vectors)
    if (u.size() != n) throw std::invalid_argument("Decomposition: vector length differs from n");
}

Complex principal_root(Complex z, int m) {
  if (z == Complex(0.0, 0.0)) return z;
  double arg = std::arg(z);
  if (arg <= -std::numbers::pi) arg = std::numbers::pi;  // -0.0 imaginary part
  return std::exp(Complex(std::log(std::abs(z)), arg) / static_cast<double>(m));
}

Dehomogenized dehomogenize(const Decomposition& d) {
  Dehomogenized out;
  for (const auto& u : d.vectors) {
    if (u[0] == Complex(0.0, 0.0)) throw std::domain_error("dehomogenize: first coordinate is zero");
    out.lambda.push_back(std::pow(u[0], d.order));
    out.points.push_back(u.tail(d.n - 1) / u[0]);
  }
  return out;
}

SymTensor from_decomposition(const Decomposition& d) {
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(SymTensor(d.n, d.order).size()));
  for (const auto& u : d.vectors) {
    if (u.size() != d.n) throw std::invalid_argument("from_decomposition: vector length differs from n");
    acc += rank1_power(u, d.order).values();
  }
  return SymTensor(d.n, d.order, std::move(acc));
}

RandomInstance random_rank_r(int n, int order, int r, std::uint64_t seed, std::optional<double> tau) {
  if (r < 1) throw std::invalid_argument("random_rank_r: r must be >= 1");
  if (tau && !(*tau > 0.0)) throw std::invalid_argument("random_rank_r: tau must be positive");
  std::mt19937_64 rng(seed);
  Decomposition d(n, order);
  for (int i = 1; i <= r; ++i) {
    CVector u = complex_gaussian(n, rng);
    if (tau) u *= std::pow(*tau, static_cast<double>(i) / order);
    d.vectors.push_back(std::move(u));
  }
  SymTensor t = from_decomposition(d);
  return {std::move(t), std::move(d)};
}

SymTensor perturb(const SymTensor& f, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw std::invalid_argument("perturb: eps must be nonnegative");
  if (eps == 0.0) return f;
  std::mt19937_64 rng(seed);
  CVector e = complex_gaussian(static_cast<Eigen::Index>(f.size()), rng);
  SymTensor noise(f.dim(), f.order(), std::move(e));
  const double norm = hs_norm(noise);
  return f + Complex(eps / norm, 0.0) * noise;
}

}  // namespace symlra
