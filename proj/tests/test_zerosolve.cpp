#include <gtest/gtest.h>

#include <random>

#include "symlra/families.hpp"
#include "symlra/matching.hpp"
#include "symlra/zerosolve.hpp"

using namespace symlra;

namespace {

CompanionSet random_companions(int nv, Eigen::Index r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CompanionSet c;
  for (int i = 0; i < nv; ++i) {
    CMatrix m(r, r);
    for (Eigen::Index j = 0; j < r; ++j) m.col(j) = complex_gaussian(r, rng);
    c.matrices.push_back(m);
  }
  return c;
}

CompanionSet exact_companions(const RandomInstance& inst, int r) {
  const MonomialBasis b = build_basis(inst.tensor.dim(), inst.tensor.order(), r);
  return companion(solve_generating(inst.tensor, b).assemble(), b);
}

}  // namespace

TEST(VHat, QuadraticFormMatchesDirectSum) {
  const CompanionSet c = random_companions(3, 4, 1);
  const VHat vh = build_vhat(c);
  EXPECT_LE((vh.vhat - vh.vhat.adjoint()).norm(), 1e-12 * vh.vhat.norm());
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    const CVector xi = complex_gaussian(3, rng);
    CMatrix l = CMatrix::Zero(4, 4);
    for (int j = 0; j < 3; ++j) l += xi[j] * c.matrices[static_cast<std::size_t>(j)];
    double direct = 0.0;
    for (const auto& m : c.matrices) direct += (m * l - l * m).squaredNorm();
    const Complex q = xi.dot(vh.vhat * xi);
    EXPECT_NEAR(q.real(), direct, 1e-10 * direct);
    EXPECT_NEAR(q.imag(), 0.0, 1e-10 * direct);
  }
}

TEST(SelectXi, SmallestEigenvectorOrFallback) {
  const VHat vh = build_vhat(random_companions(3, 4, 3));
  const XiSelection s = select_xi(vh.vhat);
  EXPECT_FALSE(s.fallback);
  EXPECT_NEAR(s.xi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(s.xi.dot(vh.vhat * s.xi).real(), s.lambda_min, 1e-10 * s.lambda_max);

  // commuting matrices make Vhat vanish; xi is then drawn from the seed
  const CMatrix zero = CMatrix::Zero(3, 3);
  const XiSelection a = select_xi(zero, 1e-10, 5);
  const XiSelection b = select_xi(zero, 1e-10, 5);
  const XiSelection c = select_xi(zero, 1e-10, 6);
  EXPECT_TRUE(a.fallback);
  EXPECT_EQ(a.xi, b.xi);
  EXPECT_NE(a.xi, c.xi);
  EXPECT_NEAR(a.xi.norm(), 1.0, 1e-12);
}

TEST(ExtractZeros, ExactRankRecoversPoints) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = random_rank_r(4, 3, 3, seed);
    const CompanionSet c = exact_companions(inst, 3);
    const XiSelection xi = select_xi(build_vhat(c).vhat, 1e-10, seed);
    const MonomialBasis b = build_basis(4, 3, 3);
    const auto ex = extract_zeros(c, xi.xi, solve_generating(inst.tensor, b).assemble(), b);
    std::vector<CVector> truth;
    for (const auto& u : inst.truth.vectors) truth.push_back(u.tail(3) / u[0]);
    EXPECT_LE(point_set_distance(ex.zeros, truth), 1e-7);
    EXPECT_FALSE(ex.repeated_eigenvalue);
    ASSERT_EQ(ex.generating_residuals.size(), 3u);
    for (double g : ex.generating_residuals) EXPECT_LE(g, 1e-7);
  }
}

TEST(ExtractZeros, LinearTensorHasRepeatedZero) {
  const SymTensor f = linear_tensor(5, 3);
  const MonomialBasis b = build_basis(5, 3, 2);
  const CompanionSet c = companion(solve_generating(f, b).assemble(), b);
  CVector xi = CVector::Ones(4) / 2.0;
  const auto ex = extract_zeros(c, xi);
  // a defective double eigenvalue splits at the square root of rounding level
  EXPECT_LE(ex.min_eigen_gap, 1e-6);
  EXPECT_TRUE(ex.generating_residuals.empty());
  for (const auto& v : ex.zeros) EXPECT_LE((v - CVector::Ones(4)).norm(), 1e-5);
}

TEST(ExtractZeros, ExactlyRepeatedEigenvalueIsFlagged) {
  CompanionSet c;
  CMatrix jordan(2, 2);
  jordan << 1, 1, 0, 1;
  c.matrices = {jordan, 2.0 * CMatrix::Identity(2, 2)};
  const auto ex = extract_zeros(c, CVector::Ones(2) / std::sqrt(2.0));
  EXPECT_TRUE(ex.repeated_eigenvalue);
  EXPECT_EQ(ex.min_eigen_gap, 0.0);
}

TEST(ExtractZeros, RejectsWrongXiLength) {
  const CompanionSet c = random_companions(3, 2, 4);
  EXPECT_THROW(extract_zeros(c, CVector::Ones(2)), std::invalid_argument);
}
