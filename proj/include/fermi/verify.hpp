#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fermi {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  int threads = 1;
  /// Run only these criteria (1-based); empty means all.
  std::vector<int> only;
};

int acceptance_criterion_count();

/// Runs the acceptance criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fermi
