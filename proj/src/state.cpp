#include "fermi/state.hpp"

#include <string>

#include "fermi/error.hpp"

namespace fermi {

FermionState::FermionState(int m, int n) : m_(m), n_(n), basis_(Basis::get(m, n)) {
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->size()));
}

FermionState::FermionState(int m, int n, Eigen::VectorXcd amps)
    : m_(m), n_(n), basis_(Basis::get(m, n)), amps_(std::move(amps)) {
  require(static_cast<std::size_t>(amps_.size()) == basis_->size(), ErrorCode::ShapeMismatch,
          "state: expected " + std::to_string(basis_->size()) + " amplitudes, got " +
              std::to_string(amps_.size()));
  require(amps_.allFinite(), ErrorCode::InvalidArgument, "state: amplitudes must be finite");
}

FermionState FermionState::basis_state(const Combination& c) {
  FermionState s(c.m(), c.n());
  s.amps_[static_cast<Eigen::Index>(s.basis_->rank(c.mask()))] = 1.0;
  return s;
}

cplx FermionState::amp(const Combination& c) const {
  require(c.m() == m_ && c.n() == n_, ErrorCode::ShapeMismatch, "state: combination shape mismatch");
  return amp_at_mask(c.mask());
}

FermionState FermionState::normalized() const {
  const double nrm = norm();
  require(nrm > 0.0, ErrorCode::DegenerateInput, "cannot normalize the zero state");
  return FermionState(m_, n_, amps_ / nrm);
}

FermionState FermionState::scaled(cplx s) const { return FermionState(m_, n_, amps_ * s); }

FermionState FermionState::operator+(const FermionState& other) const {
  require(m_ == other.m_ && n_ == other.n_, ErrorCode::ShapeMismatch, "state: shape mismatch in sum");
  return FermionState(m_, n_, amps_ + other.amps_);
}

FermionState FermionState::operator-(const FermionState& other) const {
  require(m_ == other.m_ && n_ == other.n_, ErrorCode::ShapeMismatch,
          "state: shape mismatch in difference");
  return FermionState(m_, n_, amps_ - other.amps_);
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries, double tol) : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols() && entries_.rows() > 0, ErrorCode::ShapeMismatch,
          "unitary: matrix must be square and nonempty");
  const double defect = unitarity_defect();
  require(defect <= tol, ErrorCode::InvalidArgument,
          "unitary: |U^dagger U - I|_max = " + std::to_string(defect) + " exceeds tolerance");
}

UnitaryMatrix UnitaryMatrix::identity(int m) { return UnitaryMatrix(Eigen::MatrixXcd::Identity(m, m)); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
  require(m() == other.m(), ErrorCode::ShapeMismatch, "unitary: dimension mismatch in product");
  return UnitaryMatrix(entries_ * other.entries_, 1e-8);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(entries_.adjoint(), 1e-8); }

double UnitaryMatrix::unitarity_defect() const {
  const auto id = Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols());
  return (entries_.adjoint() * entries_ - id).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols(), ErrorCode::ShapeMismatch, "hermitian: matrix must be square");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  require((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::InvalidArgument,
          "hermitian: matrix is not Hermitian");
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  if (entries_.rows() > 0) {
    require(eigenvalues().minCoeff() >= -1e-10 * scale, ErrorCode::InvalidArgument,
            "hermitian: matrix is not positive semidefinite");
  }
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  return ev.reverse();
}

double max_abs_diff(const FermionState& a, const FermionState& b) {
  require(a.m() == b.m() && a.n() == b.n(), ErrorCode::ShapeMismatch, "state: shape mismatch");
  if (a.dim() == 0) return 0.0;
  return (a.amps() - b.amps()).cwiseAbs().maxCoeff();
}

}  // namespace fermi
