#include "fermi/pairs.hpp"

namespace fermi {

std::vector<char> non_sov_mask(int m, int n) {
  const auto basis = Basis::get(m, n);
  std::vector<char> out(basis->size());
  for (std::size_t r = 0; r < basis->size(); ++r) out[r] = is_single_occupancy(basis->mask(r)) ? 0 : 1;
  return out;
}

std::vector<char> containing_pair_mask(int m, int n, int first, int second) {
  const auto basis = Basis::get(m, n);
  const Mask want = (Mask{1} << (first - 1)) | (Mask{1} << (second - 1));
  std::vector<char> out(basis->size());
  for (std::size_t r = 0; r < basis->size(); ++r) out[r] = (basis->mask(r) & want) == want ? 1 : 0;
  return out;
}

}  // namespace fermi
