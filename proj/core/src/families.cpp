#include "symlra/families.hpp"

#include <cmath>
#include <stdexcept>

namespace symlra {

SymTensor tensor_from_indices(int n, int order, const std::function<Complex(std::span<const int>)>& fn) {
  const SymTensor shape(n, order);
  CVector values(static_cast<Eigen::Index>(shape.size()));
  std::vector<int> idx;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    const Exponent& alpha = shape.monomials()[a];
    idx.assign(static_cast<std::size_t>(order - alpha.total()), 1);
    for (int k = 0; k < alpha.nvars(); ++k) idx.insert(idx.end(), static_cast<std::size_t>(alpha[static_cast<std::size_t>(k)]), k + 2);
    values[static_cast<Eigen::Index>(a)] = fn(idx);
  }
  return SymTensor(n, order, std::move(values));
}

namespace {

int index_sum(std::span<const int> idx) {
  int s = 0;
  for (int i : idx) s += i;
  return s;
}

}  // namespace

SymTensor sin_tensor(int n, int order) {
  return tensor_from_indices(n, order, [](std::span<const int> i) { return Complex(std::sin(index_sum(i)), 0.0); });
}

SymTensor rootsum_tensor(int n, int order) {
  return tensor_from_indices(n, order, [](std::span<const int> i) { return Complex(std::sqrt(index_sum(i)), 0.0); });
}

SymTensor linear_tensor(int n, int order) {
  return tensor_from_indices(n, order, [](std::span<const int> i) { return Complex(index_sum(i), 0.0); });
}

SymTensor small_cubic_tensor() {
  CVector v(10);
  v << -8, 2, 15, -7, 17, 7, 17, 4, 3, 18;
  return SymTensor(3, 3, std::move(v));
}

Decomposition waring8_decomposition() {
  const int rows[8][4] = {{1, 1, 1, 1},  {1, 1, 2, -3}, {1, 2, -3, 1}, {1, -3, 2, 1},
                          {1, -1, 3, 2}, {1, 2, -1, 3}, {1, 3, -1, 2}, {1, 1, 2, 3}};
  Decomposition d(4, 4);
  for (const auto& r : rows) {
    CVector u(4);
    for (int k = 0; k < 4; ++k) u[k] = static_cast<double>(r[k]);
    d.vectors.push_back(std::move(u));
  }
  return d;
}

SymTensor waring8_tensor() { return from_decomposition(waring8_decomposition()); }

}  // namespace symlra
