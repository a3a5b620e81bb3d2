#include "symlra/monomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symlra {

Exponent Exponent::unit(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("Exponent::unit: variable out of range");
  Exponent e = zero(nvars);
  e.powers[i] = 1;
  return e;
}

int Exponent::total() const { return std::accumulate(powers.begin(), powers.end(), 0); }

std::string Exponent::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (i) os << ',';
    os << powers[i];
  }
  os << ')';
  return os.str();
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("Exponent +: length mismatch");
  Exponent c = a;
  for (int i = 0; i < a.nvars(); ++i) c.powers[i] += b.powers[i];
  return c;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("Exponent -: length mismatch");
  Exponent c = a;
  for (int i = 0; i < a.nvars(); ++i) {
    c.powers[i] -= b.powers[i];
    if (c.powers[i] < 0) throw std::invalid_argument("Exponent -: negative power");
  }
  return c;
}

bool divides(const Exponent& a, const Exponent& b) {
  if (a.nvars() != b.nvars()) return false;
  for (int i = 0; i < a.nvars(); ++i)
    if (a.powers[i] > b.powers[i]) return false;
  return true;
}

bool graded_lex_less(const Exponent& a, const Exponent& b) {
  const int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  // Same degree: the larger leading power comes first.
  return a.powers > b.powers;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multinomial(const Exponent& alpha, int order) {
  const int t = alpha.total();
  if (t > order) throw std::invalid_argument("multinomial: |alpha| = " + std::to_string(t) + " exceeds order " + std::to_string(order));
  for (int p : alpha.powers)
    if (p < 0) throw std::invalid_argument("multinomial: negative power");
  // Product of binomials avoids factorial overflow.
  std::uint64_t r = 1;
  int remaining = order;
  for (int p : alpha.powers) {
    r *= binomial(remaining, p);
    remaining -= p;
  }
  return r;
}

namespace {

void compositions(int nvars, int degree, std::vector<int>& cur, int pos, std::vector<Exponent>& out) {
  if (pos == nvars - 1) {
    cur[pos] = degree;
    out.emplace_back(cur);
    return;
  }
  for (int p = degree; p >= 0; --p) {
    cur[pos] = p;
    compositions(nvars, degree - p, cur, pos + 1, out);
  }
}

// Number of exponents in k variables with total exactly s.
std::uint64_t exact_count(int s, int k) {
  if (k == 0) return s == 0 ? 1 : 0;
  return binomial(s + k - 1, k - 1);
}

}  // namespace

MonomialSet::MonomialSet(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
  if (nvars < 0 || max_degree < 0) throw std::invalid_argument("MonomialSet: negative size");
  if (nvars == 0) {
    exps_.emplace_back();
    return;
  }
  exps_.reserve(binomial(nvars + max_degree, max_degree));
  std::vector<int> cur(nvars, 0);
  for (int d = 0; d <= max_degree; ++d) compositions(nvars, d, cur, 0, exps_);
}

std::shared_ptr<const MonomialSet> MonomialSet::shared(int nvars, int max_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, max_degree}];
  if (!slot) slot = std::make_shared<const MonomialSet>(nvars, max_degree);
  return slot;
}

std::size_t MonomialSet::count_up_to(int d) const {
  if (d < 0) return 0;
  if (nvars_ == 0) return 1;
  return binomial(nvars_ + d, d);
}

std::size_t MonomialSet::rank(const Exponent& alpha) const {
  if (alpha.nvars() != nvars_) throw std::out_of_range("MonomialSet::rank: wrong number of variables");
  const int d = alpha.total();
  if (d > max_degree_) throw std::out_of_range("MonomialSet::rank: degree " + std::to_string(d) + " exceeds " + std::to_string(max_degree_));
  if (nvars_ == 0) return 0;
  std::size_t pos = count_up_to(d - 1);
  // Count the same-degree exponents that precede alpha (larger leading powers).
  int rem = d;
  for (int i = 0; i + 1 < nvars_; ++i) {
    const int tail = nvars_ - i - 1;
    for (int b = alpha.powers[i] + 1; b <= rem; ++b) pos += exact_count(rem - b, tail);
    rem -= alpha.powers[i];
  }
  return pos;
}

}  // namespace symlra
