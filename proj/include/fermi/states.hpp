#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fermi/combination.hpp"
#include "fermi/state.hpp"

namespace fermi {

/// Combinations whose standard pairs are all distinct, in lexicographic order.
std::vector<Combination> bsov_enumerate(int m, int n);

/// 2^n C(K, n) for m = 2K; plus 2^(n-1) C(K, n-1) for m = 2K + 1.
std::uint64_t bsov_count(int m, int n);

struct SovReport {
  bool is_sov = true;
  double max_offending_amp = 0.0;
  std::vector<Combination> offending;
};

/// Flags basis elements containing a standard pair with |amp| > tol * |psi|.
SovReport is_sov(const FermionState& psi, double tol = 1e-10);

/// Equal-weight sum of all fully paired n-combinations over m modes.
FermionState bcs_state(int n, int m);

/// Same amplitudes with the single-particle space enlarged to m modes.
FermionState extend_modes(const FermionState& psi, int m);

/// |rho12 (a_{2i-1} ^ a_{2i})| for every i with 2i <= m, where a_k is the k-th column
/// of the basis (computational basis if omitted).
std::vector<double> pair_annihilation_norms(const FermionState& psi, const std::optional<Eigen::MatrixXcd>& basis = {});

/// True iff every pair_annihilation_norm is at most tol * |psi|^2.
bool sov_criterion(const FermionState& psi, const std::optional<Eigen::MatrixXcd>& basis = {}, double tol = 1e-10);

struct SampledCriterion {
  int samples = 0;
  /// Number of random orthonormal bases for which the fixed-basis criterion held.
  int passed = 0;
  /// Smallest max_i |rho12 (a_{2i-1} ^ a_{2i})| / |psi|^2 seen over the samples.
  double min_violation = 0.0;
};

/// Fixed-basis criterion over Haar-random bases. Evidence only: a finite sample
/// cannot rule out a good basis.
SampledCriterion sample_sov_criterion(const FermionState& psi, int samples, std::uint64_t seed, double tol = 1e-10);

struct ExperimentOptions {
  int restarts = 50;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ObstructionResult {
  /// min over orthonormal (a, b) of |<a ^ b | psi>|^2
  double best_residual = 0.0;
  int best_restart = -1;
  std::vector<double> residuals;
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
};

/// Minimize |<a ^ b | psi>|^2 over orthonormal pairs; (a, b) are the first two
/// rows of a unitary, so orthonormality holds by construction.
ObstructionResult pair_obstruction(const FermionState& psi, const ExperimentOptions& opts = {});

/// pair_obstruction of the BCS state psi_{n,m}.
ObstructionResult bcs_obstruction(int n, int m, const ExperimentOptions& opts = {});

struct EscapeResult {
  /// Residuals are divided by |psi|^2.
  double best_residual = 0.0;
  int best_restart = -1;
  std::vector<double> residuals;
  double min_residual = 0.0;
  double median_residual = 0.0;
  double max_residual = 0.0;
  Eigen::MatrixXcd transform;
};

/// Best relative weight outside the single occupancy subspace reachable by
/// wedge^4 U for a 4-vector.
EscapeResult sov_escape_experiment(const FermionState& psi, const ExperimentOptions& opts = {});

/// wedge^4 U |1 ^ 3 ^ 5 ^ 7> for a Haar-random U.
FermionState planted_sov_state(int m, std::uint64_t seed);

}  // namespace fermi
