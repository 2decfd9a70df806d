#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fermi {

/// Largest single-particle dimension supported by the bitmask basis.
inline constexpr int kMaxModes = 30;

/// Exact binomial coefficient for 0 <= n <= 62; returns 0 when k is out of range.
std::uint64_t binomial(int n, int k);

/// Occupation bitmask: bit (i - 1) set for 1-based index i.
using Mask = std::uint32_t;

/// Sorted 1-based index tuple naming one basis N-vector |i1 ^ ... ^ iN>.
class Combination {
 public:
  Combination(int m, std::vector<int> indices);

  static Combination from_mask(int m, Mask mask);

  int m() const noexcept { return m_; }
  int n() const noexcept { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const noexcept { return indices_; }
  Mask mask() const noexcept;

  /// Position in lexicographic order of all n-subsets of {1..m}.
  std::uint64_t rank() const;
  static Combination unrank(int m, int n, std::uint64_t r);

  bool operator==(const Combination&) const = default;

 private:
  int m_;
  std::vector<int> indices_;
};

/// Lexicographically ordered basis of the n-th exterior power of C^m.
/// Instances are shared and immutable; obtain them through Basis::get.
class Basis {
 public:
  static std::shared_ptr<const Basis> get(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return masks_.size(); }
  std::span<const Mask> masks() const noexcept { return masks_; }
  Mask mask(std::size_t r) const { return masks_[r]; }

  /// Lexicographic rank of a mask with popcount n; no validation.
  std::size_t rank(Mask mask) const noexcept;

  Basis(int m, int n);

 private:
  int m_;
  int n_;
  std::vector<Mask> masks_;
  // prefix_[i * (m + 2) + c] = sum_{v=1}^{c-1} C(m - v, n - i - 1)
  std::vector<std::uint64_t> prefix_;
};

/// Sign (+1/-1) of the permutation merging sorted S then sorted T into sorted order.
int merge_sign(Mask s, Mask t) noexcept;

}  // namespace fermi
