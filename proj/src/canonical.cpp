#include "fermi/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "fermi/error.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/pairs.hpp"

namespace fermi {
namespace {

// Orthonormal completion: appends columns of `candidates` (in order) that are not
// already spanned by `basis`.
void complete_basis(std::vector<Eigen::VectorXcd>& basis, const Eigen::MatrixXcd& candidates) {
  for (Eigen::Index k = 0; k < candidates.cols() && static_cast<Eigen::Index>(basis.size()) < candidates.rows(); ++k) {
    Eigen::VectorXcd v = candidates.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= q * q.dot(v);
    }
    const double nrm = v.norm();
    if (nrm > 0.5) basis.push_back(v / nrm);
  }
}

Eigen::MatrixXcd columns(const std::vector<Eigen::VectorXcd>& cols) {
  Eigen::MatrixXcd q(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = cols[k];
  return q;
}

FermionState paired_form(int m, const std::vector<double>& coeffs) {
  FermionState out(m, 2);
  Eigen::VectorXcd amps = out.amps();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Mask pm = Mask{3} << (2 * i);
    amps[static_cast<Eigen::Index>(out.basis().rank(pm))] = coeffs[i];
  }
  return FermionState(m, 2, std::move(amps));
}

double residual_outside(const FermionState& psi, const std::vector<char>& offending) {
  double r = 0.0;
  for (std::size_t k = 0; k < offending.size(); ++k) {
    if (offending[k]) r += std::norm(psi.amps()[static_cast<Eigen::Index>(k)]);
  }
  return r;
}

Eigen::MatrixXcd embed_block(int m, int first, const Eigen::Matrix2cd& x) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  u.block(first, first, 2, 2) = x;
  return u;
}

}  // namespace

AntisymMatrix::AntisymMatrix(const FermionState& psi) {
  require(psi.n() == 2, ErrorCode::InvalidArgument, "antisymmetric matrix needs a 2-vector");
  const int m = psi.m();
  k_ = Eigen::MatrixXcd::Zero(m, m);
  const auto& b = psi.basis();
  for (std::size_t r = 0; r < b.size(); ++r) {
    const Mask p = b.mask(r);
    const int i = std::countr_zero(p);
    const int j = 31 - std::countl_zero(p);
    k_(i, j) = psi.amps()[static_cast<Eigen::Index>(r)];
    k_(j, i) = -k_(i, j);
  }
}

TakagiForm takagi_2vector(const FermionState& psi) {
  require(psi.n() == 2, ErrorCode::InvalidArgument, "takagi: input must be a 2-vector");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "takagi: zero state");
  const int m = psi.m();
  const Eigen::MatrixXcd k = AntisymMatrix(psi).matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k * k.adjoint());
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double floor = std::pow(1e-10 * psi.norm(), 2);

  std::vector<Eigen::VectorXcd> q;
  std::vector<double> coeffs;
  // descending eigenvalues; within a degenerate eigenspace the eigenvector index
  // order fixes which vector seeds each 2x2 block
  for (Eigen::Index idx = m - 1; idx >= 0; --idx) {
    if (lam[idx] <= floor) break;
    Eigen::VectorXcd v = es.eigenvectors().col(idx);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qq : q) v -= qq * qq.dot(v);
    }
    const double nrm = v.norm();
    if (nrm < 0.5) continue;
    const Eigen::VectorXcd q1 = v / nrm;
    const Eigen::VectorXcd y = k.adjoint() * q1;
    const double c = y.norm();
    if (c * c <= floor) continue;
    Eigen::VectorXcd q2 = y.conjugate() / c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qq : q) q2 -= qq * qq.dot(q2);
      q2 -= q1 * q1.dot(q2);
    }
    q2.normalize();
    q.push_back(q1);
    q.push_back(q2);
    coeffs.push_back(c);
  }
  complete_basis(q, es.eigenvectors());
  complete_basis(q, Eigen::MatrixXcd::Identity(m, m));
  require(static_cast<int>(q.size()) == m, ErrorCode::Internal, "takagi: basis completion failed");

  const Eigen::MatrixXcd u = reunitarize(columns(q).adjoint());
  // exact block values after reunitarization
  const Eigen::MatrixXcd kk = u * k * u.transpose();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = kk(2 * static_cast<Eigen::Index>(i), 2 * static_cast<Eigen::Index>(i) + 1).real();
  }
  UnitaryMatrix transform(u, 1e-9);
  const FermionState image = apply_unitary(transform, psi);
  const double defect = (image - paired_form(m, coeffs)).norm();
  return TakagiForm{std::move(coeffs), std::move(transform), defect};
}

Canonical3in5 canonical_3in5(const FermionState& psi) {
  require(psi.m() == 5 && psi.n() == 3, ErrorCode::InvalidArgument, "canonical_3in5: needs a 3-vector with m = 5");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "canonical_3in5: zero state");
  constexpr int m = 5;

  // kernel of x -> psi ^ x
  Eigen::MatrixXcd wedge_map(5, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
    e[j] = 1.0;
    wedge_map.col(j) = wedge(psi, one_vector(e)).amps();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wedge_map, Eigen::ComputeFullV);
  const Eigen::Index last = m - 1;
  require(svd.singularValues()[last] <= 1e-8 * psi.norm(), ErrorCode::InvalidArgument,
          "canonical_3in5: kernel of x -> psi ^ x is numerically empty (ill-conditioned input)");
  const Eigen::VectorXcd v = svd.matrixV().col(last);

  // W unitary with last column v; psi' = wedge^3 W^dagger psi = phi' ^ |5>
  std::vector<Eigen::VectorXcd> cols{v};
  complete_basis(cols, Eigen::MatrixXcd::Identity(m, m));
  std::rotate(cols.begin(), cols.begin() + 1, cols.end());
  const Eigen::MatrixXcd w = columns(cols);
  const FermionState rotated = apply_matrix(w.adjoint(), psi);

  FermionState phi_shape(4, 2);
  Eigen::VectorXcd phi_amps = phi_shape.amps();
  for (std::size_t r = 0; r < phi_shape.dim(); ++r) {
    const Mask pm = phi_shape.basis().mask(r) | (Mask{1} << 4);
    phi_amps[static_cast<Eigen::Index>(r)] = rotated.amp_at_mask(pm);
  }
  const FermionState phi(4, 2, std::move(phi_amps));
  const TakagiForm tf = takagi_2vector(phi);

  Eigen::MatrixXcd u4 = Eigen::MatrixXcd::Identity(m, m);
  u4.topLeftCorner(4, 4) = tf.transform.matrix();
  const Eigen::MatrixXcd u = reunitarize(u4 * w.adjoint());

  Canonical3in5 out{0.0, 0.0, UnitaryMatrix(u, 1e-9), 0.0};
  out.c1 = tf.coeffs.empty() ? 0.0 : tf.coeffs[0];
  out.c2 = tf.coeffs.size() > 1 ? tf.coeffs[1] : 0.0;
  FermionState target(5, 3);
  Eigen::VectorXcd t = target.amps();
  t[static_cast<Eigen::Index>(target.basis().rank(0b10011))] = out.c1;
  t[static_cast<Eigen::Index>(target.basis().rank(0b11100))] = out.c2;
  out.defect = (apply_unitary(out.transform, psi) - FermionState(5, 3, std::move(t))).norm();
  return out;
}

ReductionResult reduce_to_sov(const FermionState& psi, const ReduceOptions& opts) {
  require(psi.n() == 3, ErrorCode::InvalidArgument, "reduce_to_sov: needs a 3-vector");
  require(psi.m() >= 5, ErrorCode::InvalidArgument, "reduce_to_sov: needs m >= 5");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "reduce_to_sov: zero state");
  const int m = psi.m();
  const auto offending = non_sov_mask(m, 3);
  const double threshold = opts.tol * psi.norm2();

  // A single Slater determinant |S> is relabeled onto |1 ^ 3 ^ 5> by a permutation.
  std::vector<std::size_t> support;
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    if (psi.amps()[static_cast<Eigen::Index>(r)] != 0.0) support.push_back(r);
  }
  if (support.size() == 1 && offending[support[0]]) {
    const Mask s = psi.basis().mask(support[0]);
    std::vector<int> target_of(static_cast<std::size_t>(m));
    int next_occ = 0;
    std::vector<int> free_slots;
    for (int k = 0; k < m; ++k) {
      if (k != 0 && k != 2 && k != 4) free_slots.push_back(k);
    }
    int next_free = 0;
    for (int k = 0; k < m; ++k) {
      target_of[static_cast<std::size_t>(k)] = (s >> k & 1) ? 2 * next_occ++ : free_slots[static_cast<std::size_t>(next_free++)];
    }
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k < m; ++k) p(target_of[static_cast<std::size_t>(k)], k) = 1.0;
    UnitaryMatrix u(p);
    FermionState reduced = apply_unitary(u, psi);
    const double res = residual_outside(reduced, offending);
    return ReductionResult{std::move(u), std::move(reduced), res, res <= threshold, 0, {res}, {}};
  }

  RestartOptions ro;
  ro.restarts = opts.restarts;
  ro.seed = opts.seed;
  ro.success_residual = threshold;
  ro.threads = opts.threads;
  ro.lm.stop_residual = threshold * 1e-8;
  const RestartOutcome outcome = minimize_with_restarts(LuObjective(psi, offending), ro);

  UnitaryMatrix u(outcome.best.u, 1e-9);
  FermionState reduced = apply_unitary(u, psi);
  const double res = residual_outside(reduced, offending);
  return ReductionResult{std::move(u), std::move(reduced), res, res <= threshold, outcome.best_restart,
                         outcome.residuals, {}};
}

std::vector<std::array<int, 3>> minimal_even_excluded(int m) {
  require(m >= 6 && m % 2 == 0, ErrorCode::InvalidArgument, "minimal even construction needs even m >= 6");
  std::vector<std::array<int, 3>> out{{1, 3, 6}, {1, 4, 6}};
  for (int i = 3; i <= m / 2; ++i) out.push_back({1, 2 * i - 3, 2 * i - 1});
  return out;
}

std::array<cplx, 8> apply_qubit_unitaries(const std::array<Eigen::Matrix2cd, 3>& us, const std::array<cplx, 8>& amps) {
  std::array<cplx, 8> out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        cplx acc = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) acc += us[0](i, a) * us[1](j, b) * us[2](k, c) * amps[static_cast<std::size_t>(4 * a + 2 * b + c)];
          }
        }
        out[static_cast<std::size_t>(4 * i + 2 * j + k)] = acc;
      }
    }
  }
  return out;
}

QubitTripleResult zero_qubit_triple(const std::array<cplx, 8>& amps, const std::array<int, 3>& targets, double tol,
                                    int restarts, std::uint64_t seed) {
  for (int t : targets) require(t >= 0 && t < 8, ErrorCode::InvalidArgument, "zero_qubit_triple: target label out of range");
  require(targets[0] != targets[1] && targets[0] != targets[2] && targets[1] != targets[2], ErrorCode::InvalidArgument,
          "zero_qubit_triple: targets must be distinct");
  for (const cplx& a : amps) require(std::isfinite(a.real()) && std::isfinite(a.imag()), ErrorCode::InvalidArgument,
                                     "zero_qubit_triple: non-finite amplitude");

  // embed |ijk> as |(i+1) ^ (j+3) ^ (k+5)> in the 3-vectors over C^6
  auto label_mask = [](int label) -> Mask {
    const int i = label >> 2 & 1;
    const int j = label >> 1 & 1;
    const int k = label & 1;
    return (Mask{1} << i) | (Mask{1} << (2 + j)) | (Mask{1} << (4 + k));
  };
  FermionState shape(6, 3);
  Eigen::VectorXcd v = shape.amps();
  for (int label = 0; label < 8; ++label) {
    v[static_cast<Eigen::Index>(shape.basis().rank(label_mask(label)))] = amps[static_cast<std::size_t>(label)];
  }
  std::vector<char> offending(shape.dim(), 0);
  for (int t : targets) offending[shape.basis().rank(label_mask(t))] = 1;
  const LuObjective obj(FermionState(6, 3, std::move(v)), std::move(offending), {{0, 1}, {2, 3}, {4, 5}});

  RestartOptions ro;
  ro.restarts = restarts;
  ro.seed = seed;
  ro.success_residual = tol * tol;
  ro.lm.stop_residual = tol * tol * 1e-8;
  const RestartOutcome outcome = minimize_with_restarts(obj, ro);

  QubitTripleResult res;
  const Eigen::MatrixXcd u = outcome.best.u;
  for (int q = 0; q < 3; ++q) res.unitaries[static_cast<std::size_t>(q)] = u.block(2 * q, 2 * q, 2, 2);
  const auto image = apply_qubit_unitaries(res.unitaries, amps);
  for (int t : targets) res.max_target_amp = std::max(res.max_target_amp, std::abs(image[static_cast<std::size_t>(t)]));
  res.success = res.max_target_amp <= tol;
  res.restart_index = outcome.best_restart;
  return res;
}

ReductionResult reduce_to_minimal(const FermionState& psi, const MinimalOptions& opts) {
  require(psi.n() == 3, ErrorCode::InvalidArgument, "reduce_to_minimal: needs a 3-vector");
  require(psi.m() % 2 == 0, ErrorCode::InvalidArgument, "reduce_to_minimal: needs even m");
  require(psi.m() >= 6, ErrorCode::InvalidArgument, "reduce_to_minimal: needs m >= 6");
  const int m = psi.m();
  const auto excluded = minimal_even_excluded(m);
  auto triple_mask = [](const std::array<int, 3>& t) {
    return (Mask{1} << (t[0] - 1)) | (Mask{1} << (t[1] - 1)) | (Mask{1} << (t[2] - 1));
  };

  ReductionResult res = reduce_to_sov(psi, opts.sov);
  res.steps.push_back({"sov", 0.0});
  if (!res.success) return res;

  Eigen::MatrixXcd u = res.transform.matrix();
  FermionState state = res.reduced;
  std::size_t zeroed = 0;
  auto max_zeroed = [&](const FermionState& s) {
    double mx = 0.0;
    for (std::size_t k = 0; k < zeroed; ++k) mx = std::max(mx, std::abs(s.amp_at_mask(triple_mask(excluded[k]))));
    return mx;
  };

  // base step on the three-qubit block {1,2} x {3,4} x {5,6}
  std::array<cplx, 8> q{};
  for (int label = 0; label < 8; ++label) {
    const Mask mk = (Mask{1} << (label >> 2 & 1)) | (Mask{1} << (2 + (label >> 1 & 1))) | (Mask{1} << (4 + (label & 1)));
    q[static_cast<std::size_t>(label)] = state.amp_at_mask(mk);
  }
  const double scale = std::max(psi.norm(), 1e-300);
  const QubitTripleResult qt = zero_qubit_triple(q, {0b000, 0b001, 0b011}, opts.qubit_tol * scale,
                                                 opts.qubit_restarts, opts.sov.seed);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(m, m);
  for (int k = 0; k < 3; ++k) block.block(2 * k, 2 * k, 2, 2) = qt.unitaries[static_cast<std::size_t>(k)];
  state = apply_matrix(block, state);
  u = block * u;
  // the first three exclusions are (1,3,6), (1,4,6), (1,3,5)
  zeroed = 3;
  res.steps.push_back({"qubit-base", max_zeroed(state)});

  for (int i = 4; i <= m / 2; ++i) {
    const Mask lo = (Mask{1} << 0) | (Mask{1} << (2 * i - 4)) | (Mask{1} << (2 * i - 2));
    const Mask hi = (Mask{1} << 0) | (Mask{1} << (2 * i - 4)) | (Mask{1} << (2 * i - 1));
    const cplx alpha = state.amp_at_mask(lo);
    const cplx beta = state.amp_at_mask(hi);
    const double r = std::hypot(std::abs(alpha), std::abs(beta));
    Eigen::Matrix2cd x = Eigen::Matrix2cd::Identity();
    if (r > 0.0 && alpha != 0.0) {
      x << beta / r, -alpha / r, std::conj(alpha) / r, std::conj(beta) / r;
    }
    const Eigen::MatrixXcd step = embed_block(m, 2 * i - 2, x);
    state = apply_matrix(step, state);
    u = step * u;
    ++zeroed;
    res.steps.push_back({"pair-" + std::to_string(i), max_zeroed(state)});
  }

  std::vector<char> outside = non_sov_mask(m, 3);
  for (const auto& t : excluded) outside[state.basis().rank(triple_mask(t))] = 1;
  res.transform = UnitaryMatrix(reunitarize(u), 1e-9);
  res.reduced = apply_unitary(res.transform, psi);
  res.residual = residual_outside(res.reduced, outside);
  res.success = qt.success && res.residual <= opts.tol * psi.norm2();
  return res;
}

FermionState canonical_six_mode_state(double a, double b, double c, double d, cplx z) {
  FermionState shape(6, 3);
  Eigen::VectorXcd v = shape.amps();
  auto put = [&](int i, int j, int k, cplx val) {
    v[static_cast<Eigen::Index>(shape.basis().rank((Mask{1} << (i - 1)) | (Mask{1} << (j - 1)) | (Mask{1} << (k - 1))))] = val;
  };
  put(2, 3, 5, a);
  put(1, 4, 5, b);
  put(1, 3, 6, c);
  put(2, 4, 6, d);
  put(1, 3, 5, z);
  return FermionState(6, 3, std::move(v));
}

NrepSpectrum nrep_spectrum(double a, double b, double c, double d, cplx z) {
  require(a >= 0 && b >= 0 && c >= 0 && d >= 0, ErrorCode::InvalidArgument,
          "nrep_spectrum: a, b, c, d must be nonnegative");
  const double norm2 = a * a + b * b + c * c + d * d + std::norm(z);
  require(std::abs(norm2 - 1.0) <= 1e-10, ErrorCode::InvalidArgument,
          "nrep_spectrum: coefficients are not normalized (a^2+b^2+c^2+d^2+|z|^2 != 1)");
  const Eigen::VectorXd ev = rdm1(canonical_six_mode_state(a, b, c, d, z)).eigenvalues();
  NrepSpectrum out;
  for (int i = 0; i < 6; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = ev[i];
  for (int i = 0; i < 3; ++i) {
    out.pairing_defect = std::max(out.pairing_defect, std::abs(ev[i] + ev[5 - i] - 1.0));
  }
  require(out.pairing_defect <= 1e-10, ErrorCode::Internal,
          "nrep_spectrum: eigenvalue pairing lambda_i + lambda_{7-i} = 1 violated");
  return out;
}

}  // namespace fermi
