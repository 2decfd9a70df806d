#include <gtest/gtest.h>

#include <cmath>

#include "fermi/canonical.hpp"
#include "fermi/error.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/oracles.hpp"
#include "fermi/random.hpp"
#include "fermi/states.hpp"

namespace fermi {
namespace {

FermionState ket(int m, std::vector<int> idx) { return FermionState::basis_state(Combination(m, std::move(idx))); }

TEST(Bsov, Counts) {
  EXPECT_EQ(bsov_count(6, 3), 8u);
  EXPECT_EQ(bsov_count(7, 3), 20u);
  for (int m = 2; m <= 14; ++m) {
    for (int n = 0; n <= m; ++n) {
      EXPECT_EQ(bsov_count(m, n), oracle::brute_bsov_count(m, n)) << m << "," << n;
      EXPECT_EQ(bsov_enumerate(m, n).size(), bsov_count(m, n));
    }
  }
}

TEST(Bsov, EnumerateFourTwo) {
  const std::vector<Combination> want = {Combination(4, {1, 3}), Combination(4, {1, 4}), Combination(4, {2, 3}),
                                         Combination(4, {2, 4})};
  EXPECT_EQ(bsov_enumerate(4, 2), want);
}

TEST(IsSov, Examples) {
  EXPECT_TRUE(is_sov(ket(6, {1, 3, 5})).is_sov);
  const SovReport r = is_sov(ket(6, {1, 2, 3}));
  EXPECT_FALSE(r.is_sov);
  ASSERT_EQ(r.offending.size(), 1u);
  EXPECT_EQ(r.offending[0], Combination(6, {1, 2, 3}));
  const ReductionResult red = reduce_to_sov(random_state(6, 3, 5));
  EXPECT_TRUE(is_sov(red.reduced, 1e-6).is_sov);
}

TEST(Bcs, Examples) {
  const FermionState p26 = bcs_state(2, 6);
  EXPECT_EQ(max_abs_diff(p26, ket(6, {1, 2}) + ket(6, {3, 4}) + ket(6, {5, 6})), 0.0);
  EXPECT_EQ(p26.norm2(), 3.0);
  std::size_t terms = 0;
  const FermionState p48 = bcs_state(4, 8);
  for (Eigen::Index i = 0; i < p48.amps().size(); ++i) terms += p48.amps()[i] != 0.0;
  EXPECT_EQ(terms, 6u);
  EXPECT_EQ(max_abs_diff(bcs_state(4, 4), ket(4, {1, 2, 3, 4})), 0.0);
  EXPECT_THROW(bcs_state(3, 6), Error);
  EXPECT_THROW(bcs_state(2, 5), Error);
}

TEST(SovCriterion, ComputationalBasis) {
  const FermionState bsov_sum = ket(6, {1, 3, 5}) + ket(6, {2, 3, 6}).scaled(cplx(0.5, 1));
  EXPECT_TRUE(sov_criterion(bsov_sum));
  EXPECT_FALSE(sov_criterion(ket(6, {1, 2, 3})));
}

TEST(SovCriterion, AgreesWithIsSov) {
  // random supports on 6 modes: the fixed-basis criterion matches direct inspection
  Rng rng = make_rng(31);
  std::uniform_int_distribution<int> pick(0, 19);
  for (int trial = 0; trial < 200; ++trial) {
    FermionState psi(6, 3);
    for (int k = 0; k < 3; ++k) {
      const Combination c = Combination::unrank(6, 3, static_cast<std::uint64_t>(pick(rng)));
      psi = psi + FermionState::basis_state(c).scaled(cplx(1.0 + k, 0.5 * k));
    }
    if (psi.is_zero()) continue;
    EXPECT_EQ(sov_criterion(psi), is_sov(psi).is_sov) << "trial " << trial;
  }
}

TEST(SovCriterion, RotatedBasisFindsPlantedSov) {
  Rng rng = make_rng(4);
  const Eigen::MatrixXcd u = haar_unitary(6, rng);
  const FermionState psi = apply_unitary(UnitaryMatrix(u), ket(6, {1, 3, 5}) + ket(6, {2, 4, 5}));
  EXPECT_FALSE(sov_criterion(psi));
  EXPECT_TRUE(sov_criterion(psi, u));
}

TEST(SovCriterion, BcsFailsSampledBases) {
  const SampledCriterion s = sample_sov_criterion(bcs_state(4, 8), 100, 3);
  EXPECT_EQ(s.samples, 100);
  EXPECT_EQ(s.passed, 0);
  EXPECT_GT(s.min_violation, 1e-3);
}

TEST(Obstruction, PairStateHasExactZero) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(6);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(6);
  a[0] = 1.0;
  b[2] = 1.0;
  EXPECT_EQ(partial_inner(wedge(one_vector(a), one_vector(b)), bcs_state(2, 6)).norm2(), 0.0);
  EXPECT_LE(bcs_obstruction(2, 6, {10, 1, 1}).best_residual, 1e-20);
}

TEST(Obstruction, BcsFourEightPositiveAndInvariant) {
  const ExperimentOptions opts{50, 2, 1};
  const ObstructionResult plain = bcs_obstruction(4, 8, opts);
  EXPECT_GT(plain.best_residual, 1e-8);
  EXPECT_NEAR(std::abs(partial_inner(wedge(one_vector(plain.a), one_vector(plain.b)), bcs_state(4, 8)).norm2()),
              plain.best_residual, 1e-10);

  Rng rng = make_rng(6);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix2cd blk = haar_unitary(2, rng);
    u.block(2 * k, 2 * k, 2, 2) = blk / std::sqrt(blk.determinant());
  }
  const FermionState rotated = apply_unitary(UnitaryMatrix(u, 1e-9), bcs_state(4, 8));
  const ObstructionResult rot = pair_obstruction(rotated, opts);
  EXPECT_NEAR(rot.best_residual, plain.best_residual, 1e-6 * plain.best_residual);
}

TEST(Escape, PlantedAndBcs) {
  const ExperimentOptions opts{20, 3, 1};
  EXPECT_LE(sov_escape_experiment(planted_sov_state(8, 1), opts).best_residual, 1e-10);
  const EscapeResult bcs = sov_escape_experiment(bcs_state(4, 8), opts);
  EXPECT_GT(bcs.best_residual, 0.01);
  EXPECT_LE(bcs.min_residual, bcs.median_residual);
  EXPECT_LE(bcs.median_residual, bcs.max_residual);
  const EscapeResult rnd = sov_escape_experiment(random_state(8, 4, 9), opts);
  EXPECT_GT(rnd.best_residual, 0.0);
  EXPECT_THROW(sov_escape_experiment(bcs_state(2, 8), opts), Error);
}

TEST(ExtendModes, KeepsAmplitudes) {
  const FermionState psi = bcs_state(2, 4);
  const FermionState big = extend_modes(psi, 6);
  EXPECT_EQ(big.m(), 6);
  EXPECT_EQ(big.amp(Combination(6, {3, 4})), psi.amp(Combination(4, {3, 4})));
  EXPECT_EQ(big.norm2(), psi.norm2());
}

}  // namespace
}  // namespace fermi
