#include <gtest/gtest.h>

#include <cmath>

#include "fermi/canonical.hpp"
#include "fermi/error.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/pairs.hpp"
#include "fermi/random.hpp"
#include "fermi/states.hpp"

namespace fermi {
namespace {

FermionState ket(int m, std::vector<int> idx) { return FermionState::basis_state(Combination(m, std::move(idx))); }

std::size_t count_nonzero(const FermionState& psi, double tol) {
  std::size_t out = 0;
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) out += std::abs(psi.amps()[i]) > tol;
  return out;
}

TEST(LuJacobian, MatchesFiniteDifferences) {
  const FermionState psi = random_state(6, 3, 41);
  const LuObjective obj(psi, non_sov_mask(6, 3));
  Rng rng = make_rng(42);
  const Eigen::MatrixXcd u = haar_unitary(6, rng);
  const Eigen::MatrixXd jac = lu_jacobian(obj, u);
  const int np = obj.parameter_count();
  ASSERT_EQ(jac.cols(), np);
  const double h = 1e-6;
  for (int k = 0; k < np; ++k) {
    Eigen::VectorXd dh = Eigen::VectorXd::Zero(np);
    dh[k] = h;
    const Eigen::VectorXd plus = lu_residual_vector(obj, lu_exp(obj, dh) * u);
    const Eigen::VectorXd minus = lu_residual_vector(obj, lu_exp(obj, -dh) * u);
    const Eigen::VectorXd fd = (plus - minus) / (2 * h);
    EXPECT_LE((fd - jac.col(k)).cwiseAbs().maxCoeff(), 1e-6) << "parameter " << k;
  }
}

TEST(Takagi, AlreadyCanonical) {
  const FermionState psi = ket(4, {1, 2}).scaled(3.0) + ket(4, {3, 4});
  const TakagiForm t = takagi_2vector(psi);
  ASSERT_EQ(t.coeffs.size(), 2u);
  EXPECT_NEAR(t.coeffs[0], 3.0, 1e-12);
  EXPECT_NEAR(t.coeffs[1], 1.0, 1e-12);
  EXPECT_LE(t.defect, 1e-12);
}

TEST(Takagi, BcsPairState) {
  const TakagiForm t = takagi_2vector(bcs_state(2, 8));
  ASSERT_EQ(t.coeffs.size(), 4u);
  for (double c : t.coeffs) EXPECT_NEAR(c, 1.0, 1e-12);
}

TEST(Takagi, RecoversRotatedCoefficients) {
  Rng rng = make_rng(17);
  const FermionState base = ket(5, {1, 2}).scaled(2.0) + ket(5, {3, 4});
  const FermionState psi = apply_unitary(UnitaryMatrix(haar_unitary(5, rng)), base);
  const TakagiForm t = takagi_2vector(psi);
  ASSERT_EQ(t.coeffs.size(), 2u);
  EXPECT_NEAR(t.coeffs[0], 2.0, 1e-8);
  EXPECT_NEAR(t.coeffs[1], 1.0, 1e-8);
  EXPECT_LE(t.defect, 1e-10);
}

TEST(Takagi, Errors) {
  EXPECT_THROW(takagi_2vector(ket(4, {1, 2, 3})), Error);
  EXPECT_THROW(takagi_2vector(FermionState(4, 2)), Error);
}

TEST(Canon5, Examples) {
  const Canonical3in5 a = canonical_3in5(ket(5, {1, 2, 5}).scaled(2.0) + ket(5, {3, 4, 5}));
  EXPECT_NEAR(a.c1, 2.0, 1e-12);
  EXPECT_NEAR(a.c2, 1.0, 1e-12);
  const Canonical3in5 b = canonical_3in5(ket(5, {1, 2, 3}));
  EXPECT_NEAR(b.c1, 1.0, 1e-12);
  EXPECT_NEAR(b.c2, 0.0, 1e-12);
  Rng rng = make_rng(23);
  const FermionState base = ket(5, {1, 2, 5}).scaled(0.8) + ket(5, {3, 4, 5}).scaled(0.6);
  const Canonical3in5 c = canonical_3in5(apply_unitary(UnitaryMatrix(haar_unitary(5, rng)), base));
  EXPECT_NEAR(c.c1, 0.8, 1e-8);
  EXPECT_NEAR(c.c2, 0.6, 1e-8);
  EXPECT_LE(c.defect, 1e-10);
  EXPECT_THROW(canonical_3in5(ket(6, {1, 2, 3})), Error);
}

TEST(ReduceSov, SlaterUsesPermutation) {
  const ReductionResult r = reduce_to_sov(ket(6, {1, 2, 3}));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_NEAR(std::abs(r.reduced.amp(Combination(6, {1, 3, 5}))), 1.0, 1e-15);
}

TEST(ReduceSov, AlreadySovKeepsIdentity) {
  const FermionState psi = (ket(6, {1, 3, 5}) + ket(6, {2, 4, 6}).scaled(cplx(0, 1))).normalized();
  const ReductionResult r = reduce_to_sov(psi);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.restart_index, 0);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(max_abs_diff(r.reduced, psi), 0.0);
}

TEST(ReduceSov, RandomStates) {
  for (int m = 6; m <= 10; ++m) {
    const FermionState psi = random_state(m, 3, 500 + static_cast<std::uint64_t>(m));
    const ReductionResult r = reduce_to_sov(psi);
    EXPECT_TRUE(r.success) << "m=" << m;
    EXPECT_LE(r.residual, 1e-12 * psi.norm2());
    EXPECT_TRUE(is_sov(r.reduced, 1e-6).is_sov);
    EXPECT_LE(max_abs_diff(apply_unitary(r.transform, psi), r.reduced), 1e-12);
  }
}

TEST(ReduceSov, ThreadCountDoesNotChangeResult) {
  const FermionState psi = random_state(8, 3, 77);
  ReduceOptions one;
  ReduceOptions four;
  four.threads = 4;
  const ReductionResult a = reduce_to_sov(psi, one);
  const ReductionResult b = reduce_to_sov(psi, four);
  EXPECT_EQ(a.restart_index, b.restart_index);
  EXPECT_EQ(max_abs_diff(a.reduced, b.reduced), 0.0);
}

TEST(ReduceSov, Errors) {
  EXPECT_THROW(reduce_to_sov(ket(6, {1, 2})), Error);
  EXPECT_THROW(reduce_to_sov(FermionState(6, 3)), Error);
}

TEST(ReduceMinimal, ExcludedTriples) {
  const auto ex = minimal_even_excluded(8);
  const std::vector<std::array<int, 3>> want = {{1, 3, 6}, {1, 4, 6}, {1, 3, 5}, {1, 5, 7}};
  EXPECT_EQ(ex, want);
}

TEST(ReduceMinimal, SixModes) {
  const FermionState psi = random_state(6, 3, 61);
  const ReductionResult r = reduce_to_minimal(psi);
  EXPECT_TRUE(r.success);
  EXPECT_LE(count_nonzero(r.reduced, 1e-6), 5u);
  for (const auto& t : minimal_even_excluded(6)) {
    EXPECT_LE(std::abs(r.reduced.amp(Combination(6, {t[0], t[1], t[2]}))), 1e-6);
  }
}

TEST(ReduceMinimal, RetainedStateUnchanged) {
  const FermionState psi = ket(6, {2, 4, 6});
  const ReductionResult r = reduce_to_minimal(psi);
  EXPECT_TRUE(r.success);
  EXPECT_LE(max_abs_diff(r.reduced, psi), 1e-12);
}

TEST(ReduceMinimal, EightModes) {
  const FermionState psi = random_state(8, 3, 81);
  const ReductionResult r = reduce_to_minimal(psi);
  EXPECT_TRUE(r.success);
  EXPECT_LE(count_nonzero(r.reduced, 1e-6), static_cast<std::size_t>(8 * 7 * 3 / 6));
}

TEST(ReduceMinimal, OddModesRejected) { EXPECT_THROW(reduce_to_minimal(random_state(7, 3, 1)), Error); }

TEST(QubitTriple, TrivialInputs) {
  std::array<cplx, 8> zero{};
  zero[7] = 1.0;
  const QubitTripleResult r = zero_qubit_triple(zero, {0, 1, 3});
  EXPECT_TRUE(r.success);
  for (const auto& u : r.unitaries) EXPECT_LE((u - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
}

TEST(QubitTriple, RandomInput) {
  Rng rng = make_rng(99);
  std::normal_distribution<double> g;
  std::array<cplx, 8> amps{};
  for (auto& a : amps) a = cplx(g(rng), g(rng));
  const QubitTripleResult r = zero_qubit_triple(amps, {0, 1, 3});
  EXPECT_TRUE(r.success);
  const auto out = apply_qubit_unitaries(r.unitaries, amps);
  for (int t : {0, 1, 3}) EXPECT_LE(std::abs(out[static_cast<std::size_t>(t)]), 1e-10);
}

TEST(Nrep, Examples) {
  const NrepSpectrum s = nrep_spectrum(1, 0, 0, 0, 0);
  const std::array<double, 6> want = {1, 1, 1, 0, 0, 0};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], want[static_cast<std::size_t>(i)], 1e-14);
  const NrepSpectrum h = nrep_spectrum(0.5, 0.5, 0.5, 0.5, 0);
  for (double l : h.eigenvalues) EXPECT_NEAR(l, 0.5, 1e-14);
  EXPECT_LE(h.pairing_defect, 1e-14);
  EXPECT_THROW(nrep_spectrum(1, 1, 0, 0, 0), Error);
}

}  // namespace
}  // namespace fermi
