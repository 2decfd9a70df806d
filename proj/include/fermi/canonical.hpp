#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fermi/lu_optimizer.hpp"
#include "fermi/state.hpp"

namespace fermi {

/// Antisymmetric matrix of a 2-vector: |i ^ j> maps to E_ij - E_ji.
class AntisymMatrix {
 public:
  explicit AntisymMatrix(const FermionState& psi);
  const Eigen::MatrixXcd& matrix() const noexcept { return k_; }
  int m() const noexcept { return static_cast<int>(k_.rows()); }

 private:
  Eigen::MatrixXcd k_;
};

/// U with wedge^2 U psi = sum_i coeffs[i] |2i-1 ^ 2i>, coeffs descending and positive.
struct TakagiForm {
  std::vector<double> coeffs;
  UnitaryMatrix transform;
  /// |wedge^2 U psi - canonical form|
  double defect = 0.0;
};

TakagiForm takagi_2vector(const FermionState& psi);

/// Canonical form (c1 |1^2> + c2 |3^4>) ^ |5> of a 3-vector in dimension 5.
struct Canonical3in5 {
  double c1 = 0.0;
  double c2 = 0.0;
  UnitaryMatrix transform;
  double defect = 0.0;
};

Canonical3in5 canonical_3in5(const FermionState& psi);

struct ReductionStep {
  std::string name;
  /// Largest |amplitude| over every triple zeroed so far, measured after this step.
  double max_zeroed_amp = 0.0;
};

struct ReductionResult {
  UnitaryMatrix transform;
  FermionState reduced;
  /// Squared norm of the amplitudes outside the target subspace.
  double residual = 0.0;
  bool success = false;
  int restart_index = -1;
  /// Residual reached by every restart that ran.
  std::vector<double> restart_residuals;
  std::vector<ReductionStep> steps;
};

struct ReduceOptions {
  /// Success when residual <= tol * |psi|^2.
  double tol = 1e-12;
  int restarts = 50;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Numerically find U with wedge^3 U psi in the single occupancy subspace.
ReductionResult reduce_to_sov(const FermionState& psi, const ReduceOptions& opts = {});

struct MinimalOptions {
  ReduceOptions sov;
  /// Final success threshold on residual / |psi|^2.
  double tol = 1e-8;
  double qubit_tol = 1e-10;
  int qubit_restarts = 100;
};

/// Triples excluded from the single occupancy basis by the minimal even-m construction:
/// (1,3,6), (1,4,6) and (1,2i-3,2i-1) for 3 <= i <= m/2.
std::vector<std::array<int, 3>> minimal_even_excluded(int m);

/// Reduce to the universal subspace of minimum dimension m(m-1)(m-5)/6 for even m >= 6.
ReductionResult reduce_to_minimal(const FermionState& psi, const MinimalOptions& opts = {});

/// Three single-qubit unitaries (qubit 1 first) whose product action zeroes the
/// amplitudes at the target labels (bit pattern ijk, label 4i + 2j + k).
struct QubitTripleResult {
  std::array<Eigen::Matrix2cd, 3> unitaries;
  double max_target_amp = 0.0;
  bool success = false;
  int restart_index = -1;
};

QubitTripleResult zero_qubit_triple(const std::array<cplx, 8>& amps, const std::array<int, 3>& targets,
                                    double tol = 1e-10, int restarts = 100, std::uint64_t seed = 0);

/// Product action (u1 x u2 x u3) on an 8-vector indexed 4i + 2j + k.
std::array<cplx, 8> apply_qubit_unitaries(const std::array<Eigen::Matrix2cd, 3>& us, const std::array<cplx, 8>& amps);

/// Eigenvalues (decreasing) of rho1 for a e235 + b e145 + c e136 + d e246 + z e135.
struct NrepSpectrum {
  std::array<double, 6> eigenvalues{};
  /// max_i |lambda_i + lambda_{7-i} - 1|
  double pairing_defect = 0.0;
};

FermionState canonical_six_mode_state(double a, double b, double c, double d, cplx z);

NrepSpectrum nrep_spectrum(double a, double b, double c, double d, cplx z);

}  // namespace fermi
