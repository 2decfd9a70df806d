#include "fermi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "fermi/canonical.hpp"
#include "fermi/multilinear.hpp"
#include "fermi/oracles.hpp"
#include "fermi/polycert.hpp"
#include "fermi/random.hpp"
#include "fermi/states.hpp"

namespace fermi {
namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      if (!passed) detail << "; ";
      passed = false;
      detail << "FAILED " << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome certificates(const VerifyOptions& opts) {
  Outcome o;
  struct Case {
    int m;
    long expected;
    double limit;
    Elimination elim;
  };
  for (const Case& c : {Case{7, 48, 5.0, Elimination::Off}, Case{9, 10368, 120.0, Elimination::Off},
                        Case{11, 12431232, 1800.0, Elimination::On}}) {
    CertifyOptions co;
    co.elimination = c.elim;
    co.threads = opts.threads;
    const Certificate cert = certify(minimal_odd_spec(c.m), co);
    o.detail << "M=" << c.m << " pairing " << cert.pairing.get_str() << " " << verdict_name(cert.verdict) << " in "
             << cert.seconds << "s; ";
    o.check(abs(cert.pairing) == c.expected, "M=" + std::to_string(c.m) + " pairing magnitude");
    o.check(cert.verdict == Verdict::Universal, "M=" + std::to_string(c.m) + " verdict");
    o.check(cert.seconds < c.limit, "M=" + std::to_string(c.m) + " time limit");
  }
  return o;
}

Outcome table_rows() {
  Outcome o;
  const std::map<int, std::vector<long>> printed = {{4, {1, 1, 1, 0}},
                                                    {5, {0, 1, 1, 0}},
                                                    {6, {1, 2, 3, 2, 1, 0}},
                                                    {7, {0, 2, 4, 4, 2, 0}},
                                                    {8, {1, 3, 7, 9, 7, 3, 1}}};
  for (const auto& [M, row] : printed) {
    const CoeffTable t = coeff_table(M);
    bool same = t.values.size() >= row.size();
    for (std::size_t p = 0; same && p < row.size(); ++p) same = t.values[p] == row[p];
    o.check(same, "printed row M=" + std::to_string(M));
  }
  for (int M = 4; M <= 20; ++M) {
    const CoeffTable t = coeff_table(M);
    for (int p = 0; p <= M - 2; ++p) o.check(t.at(p) == t.at(M - 2 - p), "palindrome M=" + std::to_string(M));
    o.check(t.at(M - 1) == 0, "a_{M-1} = 0 at M=" + std::to_string(M));
    o.check(t.at(0) == (M % 2 == 0 ? 1 : 0), "a_0 parity rule at M=" + std::to_string(M));
    const auto direct = oracle::expansion_coeffs(M);
    for (int p = 0; p <= M - 2; ++p) o.check(direct[static_cast<std::size_t>(p)] == t.at(p), "expansion M=" + std::to_string(M));
  }
  o.detail << "rows M=4..8 match; palindrome, convention and direct expansion hold for M<=20";
  return o;
}

Outcome closed_vs_dp(const VerifyOptions& opts) {
  Outcome o;
  PairingOptions po;
  po.threads = opts.threads;
  for (int M : {6, 7, 8}) {
    auto factors = char_poly(sov_spec(M));
    factors.push_back(MultiPoly::monomial(default_multiplier(M)));
    const BigInt dp = vandermonde_pairing(factors, M, po).value;
    const BigInt closed = M % 2 == 0 ? closed_form_even(M) : closed_form_odd(M);
    o.detail << "M=" << M << " dp " << dp.get_str() << " closed " << closed.get_str() << "; ";
    o.check(dp == closed, "M=" + std::to_string(M) + " closed form equals DP");
    if (M == 6) {
      o.check(dp == -6, "M=6 value -6");
      o.check(vandermonde_pairing(factors, M, {false, 1}).value == dp, "M=6 unpruned expansion");
    }
  }
  return o;
}

Outcome coefficient_inequalities() {
  Outcome o;
  for (int M = 6; M <= 41; ++M) {
    const CoeffTable t = coeff_table(M);
    if (M % 2 == 0) {
      for (int p = 0; p <= M - 1; ++p) o.check(t.at(p) != t.at(M - 1 - p), "even M=" + std::to_string(M));
      for (int p = 1; p < M / 2; ++p) o.check(t.at(p) > t.at(p - 1), "increasing half row M=" + std::to_string(M));
      o.check(closed_form_even(M) != 0, "closed form nonzero M=" + std::to_string(M));
    } else {
      for (int p = 1; p <= M - 1; ++p) o.check(t.at(p) != t.at(M - p), "odd M=" + std::to_string(M));
      if (M >= 7) o.check(closed_form_odd(M) != 0, "closed form nonzero M=" + std::to_string(M));
    }
  }
  o.detail << "coefficient inequalities and nonzero closed forms for 6<=M<=41";
  return o;
}

Outcome takagi_trials() {
  Outcome o;
  double worst_t = 0.0;
  double worst_c = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = make_rng(0x7a4a, static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    const int m = 2 + trial % 9;
    std::vector<double> c(static_cast<std::size_t>(m / 2));
    for (auto& x : c) x = unif(rng);
    std::sort(c.rbegin(), c.rend());
    FermionState canon(m, 2);
    Eigen::VectorXcd amps = canon.amps();
    for (std::size_t i = 0; i < c.size(); ++i) amps[static_cast<Eigen::Index>(canon.basis().rank(Mask{3} << (2 * i)))] = c[i];
    const UnitaryMatrix u(haar_unitary(m, rng), 1e-9);
    const TakagiForm form = takagi_2vector(apply_unitary(u, FermionState(m, 2, std::move(amps))));
    if (form.coeffs.size() != c.size()) {
      o.check(false, "Takagi coefficient count at trial " + std::to_string(trial));
      continue;
    }
    for (std::size_t i = 0; i < c.size(); ++i) worst_t = std::max(worst_t, std::abs(form.coeffs[i] - c[i]));
  }
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = make_rng(0xc5, static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double c1 = unif(rng);
    double c2 = unif(rng);
    if (c1 < c2) std::swap(c1, c2);
    FermionState canon(5, 3);
    Eigen::VectorXcd amps = canon.amps();
    amps[static_cast<Eigen::Index>(canon.basis().rank(0b10011))] = c1;
    amps[static_cast<Eigen::Index>(canon.basis().rank(0b11100))] = c2;
    const UnitaryMatrix u(haar_unitary(5, rng), 1e-9);
    const Canonical3in5 form = canonical_3in5(apply_unitary(u, FermionState(5, 3, std::move(amps))));
    worst_c = std::max({worst_c, std::abs(form.c1 - c1), std::abs(form.c2 - c2)});
  }
  o.check(worst_t <= 1e-8, "2-vector coefficient recovery");
  o.check(worst_c <= 1e-8, "dimension-5 coefficient recovery");
  o.detail << "max coefficient error: 2-vectors " << worst_t << ", 3-vectors in dim 5 " << worst_c;
  return o;
}

Outcome sov_universality(const VerifyOptions& opts) {
  Outcome o;
  for (int m = 6; m <= 10; ++m) {
    int ok = 0;
    int worst_restart = 0;
    for (int s = 0; s < 100; ++s) {
      const FermionState psi = random_state(m, 3, 0x50f000 + 100 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s));
      ReduceOptions ro;
      ro.restarts = 50;
      ro.seed = static_cast<std::uint64_t>(s);
      ro.threads = opts.threads;
      const ReductionResult r = reduce_to_sov(psi, ro);
      if (r.success && r.residual <= 1e-12 * psi.norm2() && is_sov(r.reduced, 1e-6).is_sov) ++ok;
      worst_restart = std::max(worst_restart, r.restart_index);
    }
    o.detail << "m=" << m << " " << ok << "/100 (latest success at restart " << worst_restart << "); ";
    o.check(ok == 100, "single occupancy reduction at m=" + std::to_string(m));
  }
  for (int m : {6, 8}) {
    const std::size_t bound = static_cast<std::size_t>(m * (m - 1) * (m - 5) / 6);
    std::size_t worst = 0;
    for (int s = 0; s < 20; ++s) {
      const FermionState psi = random_state(m, 3, 0x3140 + 100 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s));
      MinimalOptions mo;
      mo.sov.threads = opts.threads;
      mo.sov.seed = static_cast<std::uint64_t>(s);
      const ReductionResult r = reduce_to_minimal(psi, mo);
      std::size_t nz = 0;
      for (Eigen::Index i = 0; i < r.reduced.amps().size(); ++i) nz += std::abs(r.reduced.amps()[i]) > 1e-8 * psi.norm();
      worst = std::max(worst, nz);
      o.check(r.success, "minimal reduction success at m=" + std::to_string(m));
    }
    o.detail << "minimal m=" << m << " at most " << worst << " nonzero (bound " << bound << "); ";
    o.check(worst <= bound, "minimal support bound at m=" + std::to_string(m));
  }
  return o;
}

Outcome nrep_pairing() {
  Outcome o;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = make_rng(0x4e7e, static_cast<std::uint64_t>(t));
    const Eigen::VectorXcd g = gaussian_vector(5, rng);
    std::array<double, 4> r{std::abs(g[0]), std::abs(g[1]), std::abs(g[2]), std::abs(g[3])};
    const double norm = g.norm();
    const NrepSpectrum s = nrep_spectrum(r[0] / norm, r[1] / norm, r[2] / norm, r[3] / norm, g[4] / norm);
    worst = std::max(worst, s.pairing_defect);
  }
  o.check(worst <= 1e-10, "eigenvalue pairing");
  o.detail << "1000 tuples, max |l_i + l_{7-i} - 1| = " << worst;
  return o;
}

Outcome bcs_obstruction_checks(const VerifyOptions& opts) {
  Outcome o;
  std::vector<double> minima;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    minima.push_back(bcs_obstruction(4, 8, {50, seed, opts.threads}).best_residual);
  }
  const double mean = std::accumulate(minima.begin(), minima.end(), 0.0) / static_cast<double>(minima.size());
  o.detail << "obstruction minima";
  for (double v : minima) {
    o.detail << " " << v;
    o.check(v > 1e-8, "obstruction strictly positive");
    o.check(std::abs(v - mean) <= 0.1 * mean, "obstruction stable within 10%");
  }

  const EscapeResult bcs = sov_escape_experiment(bcs_state(4, 8), {50, 11, opts.threads});
  o.detail << "; escape best " << bcs.best_residual;
  o.check(bcs.best_residual >= 0.01, "escape residual for the BCS state stays >= 0.01");
  double planted_worst = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    planted_worst = std::max(planted_worst, sov_escape_experiment(planted_sov_state(8, s), {50, s, opts.threads}).best_residual);
  }
  o.detail << "; planted worst " << planted_worst;
  o.check(planted_worst <= 1e-10, "planted states reach the single occupancy subspace");

  const FermionState psi = bcs_state(4, 8);
  double dev = 0.0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = make_rng(0x41, static_cast<std::uint64_t>(s));
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
    for (int k = 0; k < 4; ++k) {
      Eigen::Matrix2cd b = haar_unitary(2, rng);
      const cplx root = std::sqrt(b.determinant());
      u.block(2 * k, 2 * k, 2, 2) = b / root;
    }
    dev = std::max(dev, max_abs_diff(apply_unitary(UnitaryMatrix(u, 1e-9), psi), psi));
  }
  o.detail << "; stabilizer deviation " << dev;
  o.check(dev <= 1e-10, "block stabilizer invariance");
  const FermionState contracted = partial_inner(FermionState::basis_state(Combination(8, {7, 8})), psi);
  o.check(max_abs_diff(contracted, extend_modes(bcs_state(2, 6), 8)) == 0.0, "<7^8|psi_{4,8}> = psi_{2,6} exactly");
  return o;
}

Outcome dimension_bounds() {
  Outcome o;
  for (int N = 4; 2 * N <= 30; ++N) {
    for (int M = 2 * N; M <= 30; ++M) o.check(dims_report(M, N).bundle_below_total, "D < C(M,N) at M=" + std::to_string(M));
  }
  o.check(dims_report(6, 3).lower_bound == 5, "lower bound 5 at (6,3)");
  // every m = 6 subspace spanned by 4 basis triples
  std::vector<Triple> all;
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      for (int k = j + 1; k <= 6; ++k) all.push_back({i, j, k});
    }
  }
  int specs = 0;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      for (std::size_t c = b + 1; c < all.size(); ++c) {
        for (std::size_t d = c + 1; d < all.size(); ++d) {
          SubspaceSpec spec{6, {}};
          for (std::size_t t = 0; t < all.size(); ++t) {
            if (t != a && t != b && t != c && t != d) spec.excluded.push_back(all[t]);
          }
          ++specs;
          if (certify(spec).verdict != Verdict::NotUniversalDimBound) o.check(false, "dimension-4 subspace verdict");
        }
      }
    }
  }
  o.detail << "D < C(M,N) for 8<=2N<=M<=30; bound 5 at (6,3); " << specs << " dimension-4 subspaces rejected";
  return o;
}

Outcome tensor_oracle() {
  Outcome o;
  double worst = 0.0;
  std::size_t pairs = 0;
  auto factorial = [](int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= m; ++n) {
      const auto bn = Basis::get(m, n);
      std::vector<std::vector<cplx>> tensors;
      for (Mask t : bn->masks()) tensors.push_back(oracle::antisymmetrize(FermionState::basis_state(Combination::from_mask(m, t))));
      for (std::size_t s = 0; s < bn->size(); ++s) {
        const FermionState a = FermionState::basis_state(Combination::from_mask(m, bn->mask(s)));
        for (std::size_t t = 0; t < bn->size(); ++t) {
          const FermionState b = FermionState::basis_state(Combination::from_mask(m, bn->mask(t)));
          const cplx want = oracle::tensor_inner(tensors[s], tensors[t]) / factorial(n);
          worst = std::max(worst, std::abs(want - inner(a, b)));
          ++pairs;
        }
      }
      for (int p = 1; p <= n; ++p) {
        const auto bp = Basis::get(m, p);
        for (Mask sm : bp->masks()) {
          const FermionState phi = FermionState::basis_state(Combination::from_mask(m, sm));
          const auto phi_t = oracle::antisymmetrize(phi);
          for (std::size_t t = 0; t < bn->size(); ++t) {
            const FermionState psi = FermionState::basis_state(Combination::from_mask(m, bn->mask(t)));
            const auto got = oracle::antisymmetrize(partial_inner(phi, psi));
            const auto want = oracle::tensor_contract(phi_t, p, tensors[t], n, m);
            for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(want[i] / factorial(p) - got[i]));
            ++pairs;
          }
        }
      }
    }
  }
  o.check(worst <= 1e-12, "tensor agreement");
  o.detail << pairs << " basis pairs, max deviation " << worst << " (scalars n! for inner, p! for partial)";
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome(const VerifyOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"certificate reproduction (48, 10368, 12431232)", certificates},
      {"coefficient table rows and symmetry", [](const VerifyOptions&) { return table_rows(); }},
      {"closed forms equal DP pairings", closed_vs_dp},
      {"coefficient inequalities up to M=41", [](const VerifyOptions&) { return coefficient_inequalities(); }},
      {"Takagi and dimension-5 canonical recovery", [](const VerifyOptions&) { return takagi_trials(); }},
      {"single occupancy and minimal reductions", sov_universality},
      {"occupation number pairing", [](const VerifyOptions&) { return nrep_pairing(); }},
      {"BCS obstruction and stabilizer", bcs_obstruction_checks},
      {"dimension bounds", [](const VerifyOptions&) { return dimension_bounds(); }},
      {"tensor oracle agreement for m<=5", [](const VerifyOptions&) { return tensor_oracle(); }},
  };
  return list;
}

}  // namespace

int acceptance_criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  const auto& list = criteria();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), index) == opts.only.end()) continue;
    CriterionResult r;
    r.index = index;
    r.name = list[i].name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = list[i].run(opts);
      r.passed = o.passed;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fermi
