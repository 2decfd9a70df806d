#pragma once

#include <vector>

#include "fermi/state.hpp"

namespace fermi {

/// Exterior product of a p-vector and a q-vector over the same C^m.
FermionState wedge(const FermionState& phi, const FermionState& psi);

/// Hermitian inner product, conjugate-linear in phi.
cplx inner(const FermionState& phi, const FermionState& psi);

/// Partial inner product <phi|psi> of a p-vector with an N-vector, giving an
/// (N-p)-vector. Antilinear in phi. On basis elements <S|T> vanishes unless
/// S is a subset of T, and otherwise equals the sign of the shuffle that
/// reorders T as (S, T\S) times |T\S>.
FermionState partial_inner(const FermionState& phi, const FermionState& psi);

/// Interior product by a single basis vector |a> (1-based), i.e. partial_inner(|a>, psi).
FermionState interior(int a, const FermionState& psi);

/// Single-particle vector |v> as a 1-vector.
FermionState one_vector(const Eigen::VectorXcd& v);

/// Action of the N-th exterior power of U. Amplitude at R is sum_S det(U[R,S]) psi_S.
FermionState apply_unitary(const UnitaryMatrix& u, const FermionState& psi);

/// Same action for an arbitrary square matrix (no unitarity check).
FermionState apply_matrix(const Eigen::MatrixXcd& a, const FermionState& psi);

/// One-particle reduced density matrix, (rho1)_ab = <a_b psi | a_a psi>; trace n |psi|^2.
HermitianMatrix rdm1(const FermionState& psi);

/// Two-particle reduced density matrix over lexicographically ordered pairs;
/// (rho12)_PQ = <a_Q psi | a_P psi>; trace C(n,2) |psi|^2.
HermitianMatrix rdm2(const FermionState& psi);

/// Coordinates of the 2-vector |u ^ v> in the lexicographic pair basis.
Eigen::VectorXcd two_vector_coords(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct DecomposabilityResult {
  bool decomposable = false;
  int support_dim = 0;
  /// Orthonormal basis of the support (columns), i.e. the range of rho1.
  Eigen::MatrixXcd support;
};

inline constexpr double kDecomposableTolerance = 1e-8;

/// Rank test on rho1: eigenvalues below tol * |psi|^2 count as zero.
DecomposabilityResult is_decomposable(const FermionState& psi, double tol = kDecomposableTolerance);

/// One-body operator dGamma(h) = sum_ab h_ab a_a^dagger a_b applied to psi.
FermionState one_body(const Eigen::MatrixXcd& h, const FermionState& psi);

}  // namespace fermi
