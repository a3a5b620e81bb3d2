#include "symlra/sym_tensor.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace symlra {

namespace {

std::shared_ptr<const RVector> shared_sqrt_weights(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const RVector>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) {
    const auto set = MonomialSet::shared(nvars, order);
    RVector w(static_cast<Eigen::Index>(set->size()));
    for (std::size_t i = 0; i < set->size(); ++i)
      w[static_cast<Eigen::Index>(i)] = std::sqrt(static_cast<double>(multinomial((*set)[i], order)));
    slot = std::make_shared<const RVector>(std::move(w));
  }
  return slot;
}

void check_shape(int n, int order) {
  if (n < 1) throw std::invalid_argument("tensor dimension n must be >= 1");
  if (order < 1) throw std::invalid_argument("tensor order m must be >= 1");
}

std::string tuple_string(const std::vector<int>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i] + 1;
  os << ')';
  return os.str();
}

}  // namespace

SymTensor::SymTensor(int n, int order) : n_(n), m_(order) {
  check_shape(n, order);
  monomials_ = MonomialSet::shared(n - 1, order);
  values_ = CVector::Zero(static_cast<Eigen::Index>(monomials_->size()));
}

SymTensor::SymTensor(int n, int order, CVector values) : n_(n), m_(order) {
  check_shape(n, order);
  monomials_ = MonomialSet::shared(n - 1, order);
  if (static_cast<std::size_t>(values.size()) != monomials_->size())
    throw std::invalid_argument("SymTensor: expected " + std::to_string(monomials_->size()) +
                                " compact entries, got " + std::to_string(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw std::invalid_argument("SymTensor: non-finite entry at alpha = " +
                                  (*monomials_)[static_cast<std::size_t>(i)].to_string());
  values_ = std::move(values);
}

const RVector& SymTensor::sqrt_weights() const { return *shared_sqrt_weights(n_ - 1, m_); }

SymTensor operator+(const SymTensor& a, const SymTensor& b) {
  if (a.n_ != b.n_ || a.m_ != b.m_) throw std::invalid_argument("SymTensor +: shape mismatch");
  return SymTensor(a.n_, a.m_, a.values_ + b.values_);
}

SymTensor operator-(const SymTensor& a, const SymTensor& b) {
  if (a.n_ != b.n_ || a.m_ != b.m_) throw std::invalid_argument("SymTensor -: shape mismatch");
  return SymTensor(a.n_, a.m_, a.values_ - b.values_);
}

SymTensor operator*(Complex c, const SymTensor& a) { return SymTensor(a.n_, a.m_, c * a.values_); }

FullTensor::FullTensor(int n_, int m_) : n(n_), order(m_) {
  check_shape(n_, m_);
  std::size_t total = 1;
  for (int k = 0; k < m_; ++k) total *= static_cast<std::size_t>(n_);
  data.assign(total, Complex(0.0, 0.0));
}

std::size_t FullTensor::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != order) throw std::invalid_argument("FullTensor: index arity mismatch");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::out_of_range("FullTensor: index out of range");
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> FullTensor::tuple(std::size_t flat) const {
  std::vector<int> t(static_cast<std::size_t>(order));
  for (int k = order - 1; k >= 0; --k) {
    t[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return t;
}

Exponent exponent_of(std::span<const int> idx, int n) {
  Exponent e = Exponent::zero(n - 1);
  for (int i : idx)
    if (i > 0) ++e.powers[static_cast<std::size_t>(i - 1)];
  return e;
}

SymTensor compact_from_full(const FullTensor& full, double rel_tol) {
  check_shape(full.n, full.order);
  const auto set = MonomialSet::shared(full.n - 1, full.order);
  double scale = 0.0;
  for (const Complex& z : full.data) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("compact_from_full: non-finite entry");
    scale = std::max(scale, std::abs(z));
  }
  CVector values = CVector::Zero(static_cast<Eigen::Index>(set->size()));
  std::vector<std::ptrdiff_t> representative(set->size(), -1);
  for (std::size_t flat = 0; flat < full.data.size(); ++flat) {
    const auto t = full.tuple(flat);
    const std::size_t k = set->rank(exponent_of(t, full.n));
    if (representative[k] < 0) {
      representative[k] = static_cast<std::ptrdiff_t>(flat);
      values[static_cast<Eigen::Index>(k)] = full.data[flat];
    } else if (std::abs(full.data[flat] - values[static_cast<Eigen::Index>(k)]) > rel_tol * scale) {
      throw std::invalid_argument("compact_from_full: tensor is not symmetric; entries " +
                                  tuple_string(full.tuple(static_cast<std::size_t>(representative[k]))) +
                                  " and " + tuple_string(t) + " differ");
    }
  }
  return SymTensor(full.n, full.order, std::move(values));
}

FullTensor full_from_compact(const SymTensor& f) {
  FullTensor full(f.dim(), f.order());
  const auto& set = f.monomials();
  for (std::size_t flat = 0; flat < full.data.size(); ++flat) {
    const auto t = full.tuple(flat);
    full.data[flat] = f.at(set.rank(exponent_of(t, f.dim())));
  }
  return full;
}

SymTensor rank1_power(const CVector& u, int order) {
  const int n = static_cast<int>(u.size());
  check_shape(n, order);
  const auto set = MonomialSet::shared(n - 1, order);
  // pw(j, k) = u_j^k
  CMatrix pw(n, order + 1);
  for (int j = 0; j < n; ++j) {
    pw(j, 0) = 1.0;
    for (int k = 1; k <= order; ++k) pw(j, k) = pw(j, k - 1) * u[j];
  }
  CVector values(static_cast<Eigen::Index>(set->size()));
  for (std::size_t i = 0; i < set->size(); ++i) {
    const Exponent& a = (*set)[i];
    Complex v = pw(0, order - a.total());
    for (int j = 0; j < a.nvars(); ++j)
      if (a.powers[static_cast<std::size_t>(j)]) v *= pw(j + 1, a.powers[static_cast<std::size_t>(j)]);
    values[static_cast<Eigen::Index>(i)] = v;
  }
  return SymTensor(n, order, std::move(values));
}

double hs_norm(const SymTensor& f) { return f.sqrt_weights().cwiseProduct(f.values().cwiseAbs()).norm(); }

TransformResult linear_transform(const SymTensor& f, const CMatrix& a) {
  const int n = f.dim();
  if (a.rows() != n || a.cols() != n) throw std::invalid_argument("linear_transform: matrix must be n x n");
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv[0], smin = sv[n - 1];
  if (!(smax > 0.0) || smin <= n * std::numeric_limits<double>::epsilon() * smax)
    throw std::invalid_argument("linear_transform: matrix is singular");

  FullTensor cur = full_from_compact(f);
  FullTensor next(n, f.order());
  const std::size_t total = cur.data.size();
  std::size_t stride = total;
  for (int mode = 0; mode < f.order(); ++mode) {
    stride /= static_cast<std::size_t>(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::size_t digit = (flat / stride) % static_cast<std::size_t>(n);
      const std::size_t base = flat - digit * stride;
      Complex acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) acc += a(static_cast<Eigen::Index>(digit), j) * cur.data[base + static_cast<std::size_t>(j) * stride];
      next.data[flat] = acc;
    }
    std::swap(cur, next);
  }
  // Mode products of a symmetric tensor stay symmetric up to rounding.
  return {compact_from_full(cur, 1e-8), smax / smin};
}

}  // namespace symlra
