#pragma once

#include <complex>
#include <memory>

#include <Eigen/Dense>

#include "fermi/combination.hpp"

namespace fermi {

using cplx = std::complex<double>;

/// Dense amplitude vector over the lexicographic basis of the n-th exterior power of C^m.
class FermionState {
 public:
  /// Zero state.
  FermionState(int m, int n);
  FermionState(int m, int n, Eigen::VectorXcd amps);

  static FermionState basis_state(const Combination& c);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_->size(); }
  const Basis& basis() const noexcept { return *basis_; }
  const Eigen::VectorXcd& amps() const noexcept { return amps_; }

  cplx amp(const Combination& c) const;
  cplx amp_at_mask(Mask mask) const { return amps_[static_cast<Eigen::Index>(basis_->rank(mask))]; }

  double norm2() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }
  bool is_zero() const { return norm2() == 0.0; }

  FermionState normalized() const;
  FermionState scaled(cplx s) const;

  FermionState operator+(const FermionState& other) const;
  FermionState operator-(const FermionState& other) const;

 private:
  int m_;
  int n_;
  std::shared_ptr<const Basis> basis_;
  Eigen::VectorXcd amps_;
};

/// Square complex matrix checked for unitarity at construction.
class UnitaryMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  explicit UnitaryMatrix(Eigen::MatrixXcd entries, double tol = kDefaultTolerance);
  static UnitaryMatrix identity(int m);

  int m() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

  UnitaryMatrix operator*(const UnitaryMatrix& other) const;
  UnitaryMatrix adjoint() const;

  /// max |(U^dagger U - I)_ij|
  double unitarity_defect() const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Hermitian positive semidefinite matrix (reduced density matrices).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Eigen::MatrixXcd entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
  cplx trace() const { return entries_.trace(); }

  /// Eigenvalues in decreasing order.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXcd entries_;
};

double max_abs_diff(const FermionState& a, const FermionState& b);

}  // namespace fermi
