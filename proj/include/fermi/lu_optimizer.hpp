#pragma once

#include <cstdint>
#include <vector>

#include "fermi/random.hpp"
#include "fermi/state.hpp"

namespace fermi {

/// Minimize r(U) = sum over offending basis elements of |(wedge^N U psi)_T|^2
/// over unitaries U generated by the given blocks of modes.
struct LuObjective {
  FermionState psi;
  /// offending[rank] != 0 marks basis elements counted in the residual.
  std::vector<char> offending;
  /// 0-based mode blocks; U ranges over the product of U(block). One block of
  /// all modes means the full unitary group.
  std::vector<std::vector<int>> blocks;

  LuObjective(FermionState state, std::vector<char> mask, std::vector<std::vector<int>> gen_blocks = {});

  int m() const noexcept { return psi.m(); }
  /// Number of real parameters of the Lie algebra of the block group.
  int parameter_count() const noexcept;
};

double lu_residual(const LuObjective& obj, const Eigen::MatrixXcd& u);

/// Real Jacobian of the stacked (re, im) offending amplitudes of wedge^N U psi
/// with respect to the Hermitian coordinates h of U -> exp(i H(h)) U at h = 0.
Eigen::MatrixXd lu_jacobian(const LuObjective& obj, const Eigen::MatrixXcd& u);

/// Stacked (re, im) offending amplitudes of wedge^N U psi.
Eigen::VectorXd lu_residual_vector(const LuObjective& obj, const Eigen::MatrixXcd& u);

/// exp(i H(h)) for Hermitian coordinates h in the objective's block algebra.
Eigen::MatrixXcd lu_exp(const LuObjective& obj, const Eigen::VectorXd& h);

struct LmOptions {
  int max_iterations = 300;
  /// Stop as soon as the residual is at or below this value.
  double stop_residual = 0.0;
  /// Stop when an accepted step improves the residual by less than this fraction
  /// for `stall_limit` consecutive iterations.
  double stall_fraction = 1e-10;
  int stall_limit = 8;
};

struct LmRun {
  Eigen::MatrixXcd u;
  double residual = 0.0;
  int iterations = 0;
};

/// Riemannian Levenberg-Marquardt on the block unitary group, retraction U <- exp(iH) U.
LmRun minimize_lu(const LuObjective& obj, Eigen::MatrixXcd u0, const LmOptions& opts);

struct RestartOptions {
  int restarts = 50;
  std::uint64_t seed = 0;
  /// A restart succeeds when its residual is at or below this value.
  double success_residual = 0.0;
  /// Stop at the first (lowest-index) success; otherwise run every restart.
  bool stop_on_success = true;
  /// Restart 0 starts from the identity; later restarts from random block unitaries.
  bool identity_first = true;
  int threads = 1;
  LmOptions lm;
};

struct RestartOutcome {
  LmRun best;
  int best_restart = -1;
  bool success = false;
  /// Residual reached by every restart that was run, in restart order.
  std::vector<double> residuals;
};

/// Independent restarts; selection is the lowest residual with ties broken by
/// restart index (or the first success), independent of the thread count.
RestartOutcome minimize_with_restarts(const LuObjective& obj, const RestartOptions& opts);

/// Random element of the block unitary group (Haar on each block).
Eigen::MatrixXcd random_block_unitary(int m, const std::vector<std::vector<int>>& blocks, Rng& rng);

/// Nearest unitary (polar factor).
Eigen::MatrixXcd reunitarize(const Eigen::MatrixXcd& a);

/// Default worker count: FERMI_THREADS if set, else hardware concurrency.
int default_thread_count();

}  // namespace fermi
