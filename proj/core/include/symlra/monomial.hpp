#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace symlra {

/// Multi-index over the affine variables x_1..x_{nbar}, nbar = n - 1.
///
/// The power of the homogenizing coordinate x_0 is implicit: for an
/// order-m tensor it is m - total().
struct Exponent {
  std::vector<int> powers;

  Exponent() = default;
  explicit Exponent(std::vector<int> p) : powers(std::move(p)) {}
  Exponent(std::initializer_list<int> p) : powers(p) {}

  static Exponent zero(int nvars) { return Exponent(std::vector<int>(nvars, 0)); }
  /// e_i with 0-based variable position i (x_{i+1} in 1-based notation).
  static Exponent unit(int nvars, int i);

  int nvars() const { return static_cast<int>(powers.size()); }
  int total() const;
  int operator[](std::size_t i) const { return powers[i]; }

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

Exponent operator+(const Exponent& a, const Exponent& b);

/// a - b; throws std::invalid_argument if some power would go negative.
Exponent operator-(const Exponent& a, const Exponent& b);

/// True when every power of a is <= the matching power of b.
bool divides(const Exponent& a, const Exponent& b);

/// Graded lexicographic "precedes": lower total degree first, then the
/// larger power of x_1 first, then x_2, and so on.
bool graded_lex_less(const Exponent& a, const Exponent& b);

std::uint64_t binomial(int n, int k);

/// m! / (alpha_0! alpha_1! ... alpha_nbar!) with alpha_0 = m - |alpha|.
/// Throws std::invalid_argument if |alpha| > m.
std::uint64_t multinomial(const Exponent& alpha, int order);

/// All exponents with total degree <= max_degree in graded lex order.
/// Ranking is closed form; no lookup table is kept.
class MonomialSet {
 public:
  MonomialSet(int nvars, int max_degree);

  /// Shared, immutable instance; repeated calls with the same arguments
  /// return the same object.
  static std::shared_ptr<const MonomialSet> shared(int nvars, int max_degree);

  int nvars() const { return nvars_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return exps_.size(); }

  const Exponent& operator[](std::size_t i) const { return exps_[i]; }
  auto begin() const { return exps_.begin(); }
  auto end() const { return exps_.end(); }

  /// Position of alpha. Throws std::out_of_range if alpha is not a member.
  std::size_t rank(const Exponent& alpha) const;

  /// Number of members with total degree <= d.
  std::size_t count_up_to(int d) const;

 private:
  int nvars_;
  int max_degree_;
  std::vector<Exponent> exps_;
};

}  // namespace symlra
