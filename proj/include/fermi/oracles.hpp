#pragma once

#include <vector>

#include "fermi/polycert.hpp"
#include "fermi/state.hpp"

namespace fermi::oracle {

// Reference computations that share no code path with the main implementations.

/// Dense tensor in (C^m)^{(x)n} of |v1 ^ ... ^ vn> -> sum_sigma sgn(sigma) v_sigma1 (x) ... (x) v_sigman.
std::vector<cplx> antisymmetrize(const FermionState& psi);

/// Full tensor inner product sum conj(a_i) b_i.
cplx tensor_inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Contracts the first p slots of an N-slot tensor against a p-slot tensor (antilinear in phi).
std::vector<cplx> tensor_contract(const std::vector<cplx>& phi, int p, const std::vector<cplx>& psi, int n, int m);

/// Coefficients of x^{M-2-k} y^k in sum_j (-1)^j (x+y)^{M-2-j} sum_k x^{j-k} y^k by direct binomial expansion.
std::vector<BigInt> expansion_coeffs(int M);

/// Number of n-subsets of {1..m} hitting n distinct standard pairs, by filtering all subsets.
std::uint64_t brute_bsov_count(int m, int n);

}  // namespace fermi::oracle
