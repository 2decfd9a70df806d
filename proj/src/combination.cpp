#include "fermi/combination.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "fermi/error.hpp"

namespace fermi {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  require(n <= 62, ErrorCode::Capacity, "binomial: n too large for 64-bit table");
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // exact at each step: r * (n - k + i) is divisible by i
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

Combination::Combination(int m, std::vector<int> indices) : m_(m), indices_(std::move(indices)) {
  require(m >= 0 && m <= kMaxModes, ErrorCode::InvalidArgument,
          "combination: ambient dimension out of range: " + std::to_string(m));
  require(static_cast<int>(indices_.size()) <= m, ErrorCode::InvalidArgument,
          "combination: more indices than modes");
  int prev = 0;
  for (int i : indices_) {
    require(i >= 1 && i <= m, ErrorCode::InvalidArgument,
            "combination: index " + std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
    require(i > prev, ErrorCode::InvalidArgument, "combination: indices must be strictly increasing");
    prev = i;
  }
}

Combination Combination::from_mask(int m, Mask mask) {
  std::vector<int> idx;
  while (mask) {
    idx.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return Combination(m, std::move(idx));
}

Mask Combination::mask() const noexcept {
  Mask mk = 0;
  for (int i : indices_) mk |= Mask{1} << (i - 1);
  return mk;
}

std::uint64_t Combination::rank() const {
  const int n = this->n();
  std::uint64_t r = 0;
  int prev = 0;
  for (int pos = 0; pos < n; ++pos) {
    for (int v = prev + 1; v < indices_[pos]; ++v) r += binomial(m_ - v, n - pos - 1);
    prev = indices_[pos];
  }
  return r;
}

Combination Combination::unrank(int m, int n, std::uint64_t r) {
  require(m >= 0 && m <= kMaxModes && n >= 0 && n <= m, ErrorCode::InvalidArgument,
          "unrank: invalid (m, n)");
  require(r < binomial(m, n), ErrorCode::InvalidArgument,
          "unrank: rank " + std::to_string(r) + " out of range for C(" + std::to_string(m) + "," +
              std::to_string(n) + ")");
  std::vector<int> idx;
  idx.reserve(n);
  int v = 1;
  for (int pos = 0; pos < n; ++pos) {
    for (;; ++v) {
      const std::uint64_t block = binomial(m - v, n - pos - 1);
      if (r < block) break;
      r -= block;
    }
    idx.push_back(v++);
  }
  return Combination(m, std::move(idx));
}

Basis::Basis(int m, int n) : m_(m), n_(n) {
  require(m >= 0 && m <= kMaxModes && n >= 0 && n <= m, ErrorCode::InvalidArgument,
          "basis: invalid (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  const std::uint64_t count = binomial(m, n);
  require(count <= (std::uint64_t{1} << 24), ErrorCode::Capacity,
          "basis: C(m, n) too large for dense storage");
  masks_.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) masks_.push_back(Combination::unrank(m, n, r).mask());

  const int stride = m + 2;
  prefix_.assign(static_cast<std::size_t>(std::max(n, 1)) * stride, 0);
  for (int pos = 0; pos < n; ++pos) {
    std::uint64_t acc = 0;
    for (int c = 1; c <= m + 1; ++c) {
      prefix_[pos * stride + c] = acc;
      acc += binomial(m - c, n - pos - 1);
    }
  }
}

std::size_t Basis::rank(Mask mask) const noexcept {
  const int stride = m_ + 2;
  std::uint64_t r = 0;
  int prev = 0;
  for (int pos = 0; mask; ++pos) {
    const int c = std::countr_zero(mask) + 1;
    mask &= mask - 1;
    r += prefix_[pos * stride + c] - prefix_[pos * stride + prev + 1];
    prev = c;
  }
  return static_cast<std::size_t>(r);
}

std::shared_ptr<const Basis> Basis::get(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Basis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{m, n}];
  if (!slot) slot = std::make_shared<const Basis>(m, n);
  return slot;
}

int merge_sign(Mask s, Mask t) noexcept {
  int inversions = 0;
  while (t) {
    const int bit = std::countr_zero(t);
    t &= t - 1;
    const Mask above = bit >= 31 ? 0 : ~((Mask{2} << bit) - 1);
    inversions += std::popcount(s & above);
  }
  return (inversions & 1) ? -1 : 1;
}

}  // namespace fermi
