#pragma once

#include <cstdint>
#include <random>

#include "fermi/state.hpp"

namespace fermi {

using Rng = std::mt19937_64;

/// Independent deterministic stream for (seed, stream) pairs.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Vector of independent standard complex Gaussians (E|z|^2 = 1).
Eigen::VectorXcd gaussian_vector(Eigen::Index size, Rng& rng);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
Eigen::MatrixXcd haar_unitary(int m, Rng& rng);

/// Normalized state with independent complex Gaussian amplitudes.
FermionState random_state(int m, int n, std::uint64_t seed);

}  // namespace fermi
