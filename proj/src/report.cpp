#include "fermi/report.hpp"

#include <algorithm>

#include "fermi/multilinear.hpp"
#include "fermi/random.hpp"
#include "fermi/state_io.hpp"

namespace fermi {
namespace {

nlohmann::json vector_json(const Eigen::VectorXcd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

nlohmann::json big(const BigInt& v) { return v.get_str(); }

}  // namespace

nlohmann::json takagi_report(const FermionState& input, const TakagiForm& form) {
  return {{"kind", "takagi"},
          {"input_hash", state_hash(input)},
          {"m", input.m()},
          {"coeffs", form.coeffs},
          {"defect", form.defect},
          {"transform", matrix_to_json(form.transform.matrix())}};
}

nlohmann::json canon5_report(const FermionState& input, const Canonical3in5& form) {
  return {{"kind", "canon5"},
          {"input_hash", state_hash(input)},
          {"c1", form.c1},
          {"c2", form.c2},
          {"decomposable", form.c2 <= 1e-8 * input.norm()},
          {"defect", form.defect},
          {"transform", matrix_to_json(form.transform.matrix())}};
}

nlohmann::json reduction_report(const std::string& kind, const FermionState& input, const ReductionResult& result,
                                const ReduceOptions& opts) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : result.steps) steps.push_back({{"name", s.name}, {"max_zeroed_amp", s.max_zeroed_amp}});
  std::size_t nonzero = 0;
  for (Eigen::Index i = 0; i < result.reduced.amps().size(); ++i) {
    if (std::abs(result.reduced.amps()[i]) > 1e-8 * input.norm()) ++nonzero;
  }
  return {{"kind", kind},
          {"input_hash", state_hash(input)},
          {"m", input.m()},
          {"n", input.n()},
          {"seed", opts.seed},
          {"restarts", opts.restarts},
          {"tol", opts.tol},
          {"residual", result.residual},
          {"relative_residual", result.residual / input.norm2()},
          {"success", result.success},
          {"restart_index", result.restart_index},
          {"restart_residuals", result.restart_residuals},
          {"steps", steps},
          {"nonzero_amplitudes", nonzero},
          {"transform", matrix_to_json(result.transform.matrix())},
          {"reduced", state_to_json(result.reduced)}};
}

nlohmann::json certificate_report(const Certificate& cert) {
  nlohmann::json excluded = nlohmann::json::array();
  for (const auto& t : cert.spec.excluded) excluded.push_back({t[0], t[1], t[2]});
  nlohmann::json out = {{"kind", "certificate"},
                        {"m", cert.spec.m},
                        {"excluded", excluded},
                        {"excluded_count", cert.spec.excluded.size()},
                        {"dimension", cert.spec.dimension()},
                        {"multiplier", cert.multiplier},
                        {"pairing", big(cert.pairing)},
                        {"verdict", verdict_name(cert.verdict)},
                        {"eliminated_last_var", cert.eliminated},
                        {"multipliers_tried", cert.multipliers_tried},
                        {"peak_stored_terms", cert.peak_states},
                        {"seconds", cert.seconds}};
  return out;
}

nlohmann::json coeff_table_report(int max_m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int M = 4; M <= max_m; ++M) {
    const CoeffTable t = coeff_table(M);
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : t.values) vals.push_back(big(v));
    rows.push_back({{"M", M}, {"a", vals}});
  }
  return {{"kind", "coeff-table"}, {"max_m", max_m}, {"rows", rows}};
}

nlohmann::json dims_json(const DimsReport& d) {
  return {{"kind", "dims"},
          {"M", d.M},
          {"N", d.N},
          {"binom_M_N", big(d.total)},
          {"binom_M_2", big(d.group_bound)},
          {"universal_lower_bound", big(d.lower_bound)},
          {"sov_bundle_dim", big(d.sov_bundle)},
          {"bundle_below_total", d.bundle_below_total}};
}

nlohmann::json bcs_check_report(int n, int m, const BcsCheckOptions& opts) {
  const FermionState psi = bcs_state(n, m);
  const ObstructionResult ob = bcs_obstruction(n, m, opts.experiment);

  double stabilizer_dev = 0.0;
  for (int s = 0; s < opts.stabilizer_samples; ++s) {
    Rng rng = make_rng(opts.experiment.seed, 0x5ab000 + static_cast<std::uint64_t>(s));
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k < m / 2; ++k) {
      const Eigen::Matrix2cd b = haar_unitary(2, rng);
      u.block(2 * k, 2 * k, 2, 2) = b / std::sqrt(b.determinant());
    }
    stabilizer_dev = std::max(stabilizer_dev, max_abs_diff(apply_unitary(UnitaryMatrix(u, 1e-9), psi), psi));
  }

  nlohmann::json contraction = nullptr;
  if (n >= 4) {
    const FermionState last_pair = FermionState::basis_state(Combination(m, {m - 1, m}));
    const FermionState got = partial_inner(last_pair, psi);
    const FermionState want = extend_modes(bcs_state(n - 2, m - 2), m);
    contraction = {{"max_abs_diff", max_abs_diff(got, want)}, {"exact", max_abs_diff(got, want) == 0.0}};
  }
  const SampledCriterion sampled = sample_sov_criterion(psi, opts.basis_samples, opts.experiment.seed);

  return {{"kind", "bcs-check"},
          {"n", n},
          {"m", m},
          {"seed", opts.experiment.seed},
          {"restarts", opts.experiment.restarts},
          {"norm2", psi.norm2()},
          {"obstruction",
           {{"best_residual", ob.best_residual},
            {"best_restart", ob.best_restart},
            {"residuals", ob.residuals},
            {"witness_a", vector_json(ob.a)},
            {"witness_b", vector_json(ob.b)}}},
          {"stabilizer", {{"samples", opts.stabilizer_samples}, {"max_abs_diff", stabilizer_dev}}},
          {"last_pair_contraction", contraction},
          {"sampled_basis_criterion",
           {{"samples", sampled.samples},
            {"passed", sampled.passed},
            {"min_violation", sampled.min_violation},
            {"note", "sampled evidence only; a finite search cannot rule out a suitable basis"}}}};
}

nlohmann::json escape_report(const FermionState& input, const EscapeResult& r, const ExperimentOptions& opts,
                             double threshold) {
  return {{"kind", "escape"},
          {"input_hash", state_hash(input)},
          {"m", input.m()},
          {"n", input.n()},
          {"seed", opts.seed},
          {"restarts", opts.restarts},
          {"threshold", threshold},
          {"best_residual", r.best_residual},
          {"best_restart", r.best_restart},
          {"reached_threshold", r.best_residual < threshold},
          {"residuals", r.residuals},
          {"summary", {{"min", r.min_residual}, {"median", r.median_residual}, {"max", r.max_residual}}},
          {"transform", matrix_to_json(r.transform)}};
}

}  // namespace fermi
