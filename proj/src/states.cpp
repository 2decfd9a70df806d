#include "fermi/states.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "fermi/error.hpp"
#include "fermi/lu_optimizer.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/pairs.hpp"
#include "fermi/random.hpp"

namespace fermi {

std::vector<Combination> bsov_enumerate(int m, int n) {
  require(n >= 0 && n <= m, ErrorCode::InvalidArgument, "bsov_enumerate: need 0 <= n <= m");
  const auto basis = Basis::get(m, n);
  std::vector<Combination> out;
  for (Mask mask : basis->masks()) {
    if (is_single_occupancy(mask)) out.push_back(Combination::from_mask(m, mask));
  }
  return out;
}

std::uint64_t bsov_count(int m, int n) {
  require(n >= 0 && n <= m, ErrorCode::InvalidArgument, "bsov_count: need 0 <= n <= m");
  const int k = m / 2;
  std::uint64_t count = n <= k ? (std::uint64_t{1} << n) * binomial(k, n) : 0;
  if (m % 2 == 1 && n >= 1 && n - 1 <= k) count += (std::uint64_t{1} << (n - 1)) * binomial(k, n - 1);
  return count;
}

SovReport is_sov(const FermionState& psi, double tol) {
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "is_sov: zero state");
  SovReport rep;
  const double cut = tol * psi.norm();
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    const Mask mask = psi.basis().mask(r);
    if (is_single_occupancy(mask)) continue;
    const double a = std::abs(psi.amps()[static_cast<Eigen::Index>(r)]);
    rep.max_offending_amp = std::max(rep.max_offending_amp, a);
    if (a > cut) rep.offending.push_back(Combination::from_mask(psi.m(), mask));
  }
  rep.is_sov = rep.offending.empty();
  return rep;
}

FermionState bcs_state(int n, int m) {
  require(n >= 2 && n % 2 == 0 && m % 2 == 0 && m >= n, ErrorCode::InvalidArgument,
          "bcs_state: need even n >= 2 and even m >= n");
  FermionState shape(m, n);
  Eigen::VectorXcd amps = shape.amps();
  const auto pairs = Basis::get(m / 2, n / 2);
  for (Mask sites : pairs->masks()) {
    Mask mask = 0;
    for (Mask rem = sites; rem; rem &= rem - 1) mask |= Mask{3} << (2 * std::countr_zero(rem));
    amps[static_cast<Eigen::Index>(shape.basis().rank(mask))] = 1.0;
  }
  return FermionState(m, n, std::move(amps));
}

FermionState extend_modes(const FermionState& psi, int m) {
  require(m >= psi.m(), ErrorCode::InvalidArgument, "extend_modes: cannot shrink the mode space");
  FermionState shape(m, psi.n());
  Eigen::VectorXcd amps = shape.amps();
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    amps[static_cast<Eigen::Index>(shape.basis().rank(psi.basis().mask(r)))] = psi.amps()[static_cast<Eigen::Index>(r)];
  }
  return FermionState(m, psi.n(), std::move(amps));
}

std::vector<double> pair_annihilation_norms(const FermionState& psi, const std::optional<Eigen::MatrixXcd>& basis) {
  require(psi.n() >= 2, ErrorCode::InvalidArgument, "sov criterion: needs n >= 2");
  const int m = psi.m();
  const Eigen::MatrixXcd a = basis ? *basis : Eigen::MatrixXcd::Identity(m, m);
  require(a.rows() == m && a.cols() == m, ErrorCode::ShapeMismatch, "sov criterion: basis must be m x m");
  const Eigen::MatrixXcd rho = rdm2(psi).matrix();
  std::vector<double> out;
  for (int i = 0; 2 * i + 1 < m; ++i) {
    const Eigen::VectorXcd phi = two_vector_coords(a.col(2 * i), a.col(2 * i + 1));
    out.push_back((rho * phi).norm());
  }
  return out;
}

bool sov_criterion(const FermionState& psi, const std::optional<Eigen::MatrixXcd>& basis, double tol) {
  const double cut = tol * psi.norm2();
  const auto norms = pair_annihilation_norms(psi, basis);
  return std::all_of(norms.begin(), norms.end(), [cut](double v) { return v <= cut; });
}

SampledCriterion sample_sov_criterion(const FermionState& psi, int samples, std::uint64_t seed, double tol) {
  require(samples >= 1, ErrorCode::InvalidArgument, "sample_sov_criterion: samples must be positive");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "sample_sov_criterion: zero state");
  SampledCriterion out;
  out.samples = samples;
  out.min_violation = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    const auto norms = pair_annihilation_norms(psi, haar_unitary(psi.m(), rng));
    const double worst = *std::max_element(norms.begin(), norms.end()) / psi.norm2();
    out.min_violation = std::min(out.min_violation, worst);
    if (worst <= tol) ++out.passed;
  }
  return out;
}

ObstructionResult pair_obstruction(const FermionState& psi, const ExperimentOptions& opts) {
  require(psi.n() >= 2 && psi.m() >= psi.n() + 1, ErrorCode::InvalidArgument, "pair_obstruction: need 2 <= n < m");
  RestartOptions ro;
  ro.restarts = opts.restarts;
  ro.seed = opts.seed;
  ro.threads = opts.threads;
  ro.identity_first = false;
  ro.stop_on_success = false;
  ro.lm.stop_residual = 1e-28 * psi.norm2();
  const LuObjective obj(psi, containing_pair_mask(psi.m(), psi.n(), 1, 2));
  const RestartOutcome outcome = minimize_with_restarts(obj, ro);

  ObstructionResult out;
  out.best_residual = outcome.best.residual;
  out.best_restart = outcome.best_restart;
  out.residuals = outcome.residuals;
  // <e1 ^ e2 | wedge U psi> = wedge U <U^dagger e1 ^ U^dagger e2 | psi>
  out.a = outcome.best.u.row(0).adjoint();
  out.b = outcome.best.u.row(1).adjoint();
  return out;
}

ObstructionResult bcs_obstruction(int n, int m, const ExperimentOptions& opts) {
  require(n >= 2 && n % 2 == 0 && m % 2 == 0 && m >= 2 * n, ErrorCode::InvalidArgument,
          "bcs_obstruction: need even n >= 2 and even m >= 2n");
  return pair_obstruction(bcs_state(n, m), opts);
}

EscapeResult sov_escape_experiment(const FermionState& psi, const ExperimentOptions& opts) {
  require(psi.n() == 4, ErrorCode::InvalidArgument, "escape experiment: needs a 4-vector");
  require(psi.m() >= 8, ErrorCode::InvalidArgument, "escape experiment: needs m >= 8");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "escape experiment: zero state");
  const double scale = psi.norm2();
  RestartOptions ro;
  ro.restarts = opts.restarts;
  ro.seed = opts.seed;
  ro.threads = opts.threads;
  ro.stop_on_success = false;
  ro.lm.stop_residual = 1e-14 * scale;
  const RestartOutcome outcome = minimize_with_restarts(LuObjective(psi, non_sov_mask(psi.m(), 4)), ro);

  EscapeResult out;
  out.best_restart = outcome.best_restart;
  out.best_residual = outcome.best.residual / scale;
  for (double r : outcome.residuals) out.residuals.push_back(r / scale);
  std::vector<double> sorted = out.residuals;
  std::sort(sorted.begin(), sorted.end());
  out.min_residual = sorted.front();
  out.max_residual = sorted.back();
  out.median_residual = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                          : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
  out.transform = outcome.best.u;
  return out;
}

FermionState planted_sov_state(int m, std::uint64_t seed) {
  require(m >= 8, ErrorCode::InvalidArgument, "planted_sov_state: needs m >= 8");
  Rng rng = make_rng(seed, 0x91a47);
  const UnitaryMatrix u(haar_unitary(m, rng), 1e-9);
  return apply_unitary(u, FermionState::basis_state(Combination(m, {1, 3, 5, 7})));
}

}  // namespace fermi
