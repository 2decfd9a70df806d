#pragma once

#include <json.hpp>

#include "fermi/canonical.hpp"
#include "fermi/polycert.hpp"
#include "fermi/states.hpp"

namespace fermi {

// JSON report documents. Exact integers are written as decimal strings.

nlohmann::json takagi_report(const FermionState& input, const TakagiForm& form);
nlohmann::json canon5_report(const FermionState& input, const Canonical3in5& form);
nlohmann::json reduction_report(const std::string& kind, const FermionState& input, const ReductionResult& result,
                                const ReduceOptions& opts);
nlohmann::json certificate_report(const Certificate& cert);
nlohmann::json coeff_table_report(int max_m);
nlohmann::json dims_json(const DimsReport& dims);

struct BcsCheckOptions {
  ExperimentOptions experiment;
  int stabilizer_samples = 100;
  int basis_samples = 100;
};

/// Obstruction minimum, stabilizer invariance, pair contraction and sampled
/// basis criterion for psi_{n,m}.
nlohmann::json bcs_check_report(int n, int m, const BcsCheckOptions& opts);

nlohmann::json escape_report(const FermionState& input, const EscapeResult& result, const ExperimentOptions& opts,
                             double threshold);

}  // namespace fermi
