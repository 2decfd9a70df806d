#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fermi/canonical.hpp"
#include "fermi/combination.hpp"
#include "fermi/error.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/oracles.hpp"
#include "fermi/random.hpp"
#include "fermi/states.hpp"

namespace fermi {
namespace {

FermionState ket(int m, std::vector<int> idx) { return FermionState::basis_state(Combination(m, std::move(idx))); }

Eigen::VectorXcd unit(int m, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
  v[i - 1] = 1.0;
  return v;
}

TEST(Combination, RankEndpoints) {
  EXPECT_EQ(Combination(4, {1, 2}).rank(), 0u);
  EXPECT_EQ(Combination::unrank(4, 2, 5), Combination(4, {3, 4}));
}

TEST(Combination, RankMatchesBruteForceEnumeration) {
  // lexicographic predecessors of (1,3,5) among all 3-subsets of 6
  std::vector<std::vector<int>> all;
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c = b + 1; c <= 6; ++c) all.push_back({a, b, c});
  const auto it = std::find(all.begin(), all.end(), std::vector<int>{1, 3, 5});
  EXPECT_EQ(Combination(6, {1, 3, 5}).rank(), static_cast<std::uint64_t>(it - all.begin()));
  for (std::size_t r = 0; r < all.size(); ++r) EXPECT_EQ(Combination(6, all[r]).rank(), r);
}

TEST(Combination, RoundTrip) {
  for (std::uint64_t r = 0; r < binomial(8, 4); ++r) EXPECT_EQ(Combination::unrank(8, 4, r).rank(), r);
}

TEST(Combination, RejectsBadInput) {
  EXPECT_THROW(Combination(4, {2, 1}), Error);
  EXPECT_THROW(Combination(4, {1, 5}), Error);
  EXPECT_THROW(Combination(4, {1, 1}), Error);
}

TEST(Wedge, Examples) {
  EXPECT_EQ(max_abs_diff(wedge(ket(4, {1, 2}), ket(4, {3})), ket(4, {1, 2, 3})), 0.0);
  EXPECT_EQ(max_abs_diff(wedge(ket(4, {2}), ket(4, {1})), ket(4, {1, 2}).scaled(-1.0)), 0.0);
  EXPECT_TRUE(wedge(ket(4, {1}), ket(4, {1, 3})).is_zero());
}

TEST(Wedge, MatchesDeterminantForOneVectors) {
  Rng rng = make_rng(3);
  const Eigen::MatrixXcd a = haar_unitary(5, rng);
  const FermionState w = wedge(wedge(one_vector(a.col(0)), one_vector(a.col(1))), one_vector(a.col(2)));
  for (std::size_t r = 0; r < w.dim(); ++r) {
    const Combination c = Combination::from_mask(5, w.basis().mask(r));
    Eigen::Matrix3cd sub;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sub(i, j) = a(c.indices()[static_cast<std::size_t>(i)] - 1, j);
    EXPECT_NEAR(std::abs(w.amps()[static_cast<Eigen::Index>(r)] - sub.determinant()), 0.0, 1e-12);
  }
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(ket(3, {1, 2}), ket(3, {1, 2})), cplx(1.0));
  EXPECT_EQ(inner(ket(3, {1, 2}), ket(3, {1, 3})), cplx(0.0));
  const FermionState lhs = wedge(one_vector(unit(3, 1) + unit(3, 2)), one_vector(unit(3, 3)));
  // det [<w_i|v_j>] with w = (e1+e2, e3), v = (e1, e3)
  Eigen::Matrix2cd gram;
  gram << 1.0, 0.0, 0.0, 1.0;
  EXPECT_NEAR(std::abs(inner(lhs, ket(3, {1, 3})) - gram.determinant()), 0.0, 1e-15);
}

TEST(Inner, MismatchThrows) { EXPECT_THROW(inner(ket(3, {1}), ket(4, {1})), Error); }

TEST(PartialInner, Examples) {
  EXPECT_EQ(max_abs_diff(partial_inner(ket(3, {1}), ket(3, {1, 2, 3})), ket(3, {2, 3})), 0.0);
  EXPECT_EQ(max_abs_diff(partial_inner(ket(3, {2}), ket(3, {1, 2, 3})), ket(3, {1, 3}).scaled(-1.0)), 0.0);
}

TEST(PartialInner, LastPairOfBcsState) {
  const FermionState got = partial_inner(ket(8, {7, 8}), bcs_state(4, 8));
  EXPECT_EQ(max_abs_diff(got, extend_modes(bcs_state(2, 6), 8)), 0.0);
}

TEST(PartialInner, Adjunction) {
  // <chi | <phi|psi>> = <phi ^ chi | psi>
  for (int m = 4; m <= 7; ++m) {
    for (int p = 1; p <= 2; ++p) {
      const FermionState phi = random_state(m, p, 10 + static_cast<std::uint64_t>(m));
      const FermionState psi = random_state(m, 3, 20 + static_cast<std::uint64_t>(m));
      const FermionState chi = random_state(m, 3 - p, 30 + static_cast<std::uint64_t>(m));
      EXPECT_NEAR(std::abs(inner(chi, partial_inner(phi, psi)) - inner(wedge(phi, chi), psi)), 0.0, 1e-12);
    }
  }
}

TEST(TensorOracle, AgreesForSmallModes) {
  for (int m = 2; m <= 5; ++m) {
    for (int n = 1; n <= m; ++n) {
      const FermionState a = random_state(m, n, 100 + static_cast<std::uint64_t>(10 * m + n));
      const FermionState b = random_state(m, n, 200 + static_cast<std::uint64_t>(10 * m + n));
      const double fact = std::tgamma(n + 1.0);
      const cplx t = oracle::tensor_inner(oracle::antisymmetrize(a), oracle::antisymmetrize(b));
      EXPECT_NEAR(std::abs(t / fact - inner(a, b)), 0.0, 1e-12);
      for (int p = 1; p < n; ++p) {
        const FermionState phi = random_state(m, p, 300 + static_cast<std::uint64_t>(p));
        const auto contracted = oracle::tensor_contract(oracle::antisymmetrize(phi), p, oracle::antisymmetrize(a), n, m);
        const auto want = oracle::antisymmetrize(partial_inner(phi, a));
        const double pf = std::tgamma(p + 1.0);
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(contracted[i] - pf * want[i]), 0.0, 1e-12);
      }
    }
  }
}

TEST(ApplyUnitary, IdentityAndPermutation) {
  const FermionState psi = random_state(5, 3, 7);
  EXPECT_LE(max_abs_diff(apply_unitary(UnitaryMatrix::identity(5), psi), psi), 1e-15);
  // sigma: 1->2, 2->3, 3->1 on modes 1..3
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(5, 5);
  p.topLeftCorner(3, 3) << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  // |1^4> -> |2^4>, |3^4> -> |1^4>, |1^3> -> |2^1> = -|1^2>
  const UnitaryMatrix u(p);
  EXPECT_EQ(max_abs_diff(apply_unitary(u, ket(5, {1, 4})), ket(5, {2, 4})), 0.0);
  EXPECT_EQ(max_abs_diff(apply_unitary(u, ket(5, {3, 4})), ket(5, {1, 4})), 0.0);
  EXPECT_EQ(max_abs_diff(apply_unitary(u, ket(5, {1, 3})), ket(5, {1, 2}).scaled(-1.0)), 0.0);
}

TEST(ApplyUnitary, Functoriality) {
  Rng rng = make_rng(8);
  const UnitaryMatrix u(haar_unitary(6, rng));
  const UnitaryMatrix v(haar_unitary(6, rng));
  const FermionState psi = random_state(6, 3, 9);
  EXPECT_LE(max_abs_diff(apply_unitary(u * v, psi), apply_unitary(u, apply_unitary(v, psi))), 1e-12);
  EXPECT_NEAR(apply_unitary(u, psi).norm2(), psi.norm2(), 1e-12);
}

TEST(ApplyUnitary, BlockSu2FixesBcs) {
  Rng rng = make_rng(5);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix2cd b = haar_unitary(2, rng);
    u.block(2 * k, 2 * k, 2, 2) = b / std::sqrt(b.determinant());
  }
  const FermionState psi = bcs_state(4, 8);
  EXPECT_LE(max_abs_diff(apply_unitary(UnitaryMatrix(u, 1e-9), psi), psi), 1e-12);
}

TEST(ApplyUnitary, RejectsNonUnitary) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3);
  a(0, 0) = 2.0;
  EXPECT_THROW(UnitaryMatrix{a}, Error);
}

TEST(Rdm1, Examples) {
  const HermitianMatrix r = rdm1(ket(4, {1, 2}));
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  want(0, 0) = want(1, 1) = 1.0;
  EXPECT_EQ((r.matrix() - want).norm(), 0.0);
  const FermionState psi = random_state(7, 3, 4);
  EXPECT_NEAR(std::abs(rdm1(psi).trace() - 3.0 * psi.norm2()), 0.0, 1e-10);
}

TEST(Rdm1, SixModeBlockMatrix) {
  const double a = 0.6, b = 0.5, c = 0.4, d = 0.3;
  const cplx z(0.3, -std::sqrt(0.05));
  const FermionState psi = canonical_six_mode_state(a, b, c, d, z);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(6, 6);
  const double z2 = std::norm(z);
  want(0, 0) = b * b + c * c + z2;
  want(0, 1) = a * z;
  want(1, 0) = a * std::conj(z);
  want(1, 1) = a * a + d * d;
  want(2, 2) = c * c + a * a + z2;
  want(2, 3) = b * z;
  want(3, 2) = b * std::conj(z);
  want(3, 3) = b * b + d * d;
  want(4, 4) = a * a + b * b + z2;
  want(4, 5) = c * z;
  want(5, 4) = c * std::conj(z);
  want(5, 5) = c * c + d * d;
  EXPECT_LE((rdm1(psi).matrix() - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Rdm1, Covariance) {
  Rng rng = make_rng(12);
  const Eigen::MatrixXcd u = haar_unitary(6, rng);
  const FermionState psi = random_state(6, 3, 13);
  const Eigen::MatrixXcd lhs = rdm1(apply_unitary(UnitaryMatrix(u), psi)).matrix();
  const Eigen::MatrixXcd rhs = u * rdm1(psi).matrix() * u.adjoint();
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Rdm2, SlaterDiagonal) {
  const HermitianMatrix r = rdm2(ket(4, {1, 2, 3}));
  ASSERT_EQ(r.dim(), 6);
  for (int p = 0; p < 6; ++p) {
    const Combination c = Combination::unrank(4, 2, static_cast<std::uint64_t>(p));
    const bool inside = c.indices()[1] <= 3;
    for (int q = 0; q < 6; ++q) EXPECT_EQ(r.matrix()(p, q), cplx(p == q && inside ? 1.0 : 0.0));
  }
}

TEST(Rdm2, PairAnnihilation) {
  for (int i = 1; i <= 4; ++i) {
    const Eigen::VectorXcd pair = two_vector_coords(unit(8, 2 * i - 1), unit(8, 2 * i));
    EXPECT_GT((rdm2(bcs_state(4, 8)).matrix() * pair).norm(), 0.1);
  }
  for (const Combination& c : bsov_enumerate(6, 3)) {
    const HermitianMatrix r = rdm2(FermionState::basis_state(c));
    for (int i = 1; i <= 3; ++i) {
      EXPECT_EQ((r.matrix() * two_vector_coords(unit(6, 2 * i - 1), unit(6, 2 * i))).norm(), 0.0);
    }
  }
}

TEST(Decomposable, Examples) {
  const DecomposabilityResult slater = is_decomposable(ket(4, {1, 2, 3}));
  EXPECT_TRUE(slater.decomposable);
  EXPECT_EQ(slater.support_dim, 3);
  EXPECT_NEAR(slater.support.col(0).head(3).norm(), 1.0, 1e-12);
  EXPECT_FALSE(is_decomposable(ket(4, {1, 2}) + ket(4, {3, 4})).decomposable);
  const FermionState built = wedge(one_vector(unit(3, 1) + unit(3, 2)), one_vector(unit(3, 3)));
  EXPECT_TRUE(is_decomposable(built).decomposable);
  EXPECT_THROW(is_decomposable(FermionState(4, 2)), Error);
}

}  // namespace
}  // namespace fermi
