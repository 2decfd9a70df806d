// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "fermi/fermi.h"

namespace {

void print_line(int index, const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("%s criterion %d: %s (%.2fs) | %s\n", passed ? "PASS" : "FAIL", index, name, seconds, detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failures = 0;
  const fermi_status st = fermi_verify(0, only.data(), static_cast<int>(only.size()), print_line, nullptr, &failures);
  if (st != FERMI_OK) {
    std::fprintf(stderr, "acceptance: %s\n", fermi_last_error());
    return 1;
  }
  std::printf("%d of %d criteria failed\n", failures,
              only.empty() ? fermi_verify_criterion_count() : static_cast<int>(only.size()));
  return failures == 0 ? 0 : 1;
}
