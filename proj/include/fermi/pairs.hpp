#pragma once

#include <vector>

#include "fermi/combination.hpp"

namespace fermi {

/// Standard pair {2k-1, 2k} containing the 1-based index i.
struct StandardPair {
  int index;
  int first() const noexcept { return index % 2 ? index : index - 1; }
  int second() const noexcept { return first() + 1; }
  int site() const noexcept { return (index + 1) / 2; }
};

/// True when no standard pair {2k-1, 2k} (with 2k <= m) is fully contained in the mask.
inline bool is_single_occupancy(Mask mask) noexcept {
  // bit 2k-2 and bit 2k-1 both set for some k
  constexpr Mask kLow = 0x55555555u;
  return ((mask & (mask >> 1)) & kLow) == 0;
}

/// Per-rank flags over Basis(m, n): 1 for basis elements that are not single occupancy.
std::vector<char> non_sov_mask(int m, int n);

/// Per-rank flags: 1 for basis elements containing both (1-based) modes.
std::vector<char> containing_pair_mask(int m, int n, int first, int second);

}  // namespace fermi
