#include "fermi/oracles.hpp"

#include <algorithm>

#include "fermi/error.hpp"

namespace fermi::oracle {
namespace {

std::size_t ipow(int base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
  }
  return inv % 2 ? -1 : 1;
}

}  // namespace

std::vector<cplx> antisymmetrize(const FermionState& psi) {
  const int m = psi.m();
  const int n = psi.n();
  require(m <= 8, ErrorCode::Capacity, "tensor oracle: m too large");
  std::vector<cplx> t(ipow(m, n), 0.0);
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    const cplx c = psi.amps()[static_cast<Eigen::Index>(r)];
    if (c == 0.0) continue;
    std::vector<int> idx;
    for (int b = 0; b < m; ++b) {
      if (psi.basis().mask(r) >> b & 1) idx.push_back(b);
    }
    std::vector<int> order(idx.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    do {
      std::size_t flat = 0;
      for (int k : order) flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
      t[flat] += static_cast<double>(inversion_sign(order)) * c;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return t;
}

cplx tensor_inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  require(a.size() == b.size(), ErrorCode::ShapeMismatch, "tensor oracle: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

std::vector<cplx> tensor_contract(const std::vector<cplx>& phi, int p, const std::vector<cplx>& psi, int n, int m) {
  require(p <= n, ErrorCode::InvalidArgument, "tensor oracle: p > n");
  const std::size_t head = ipow(m, p);
  const std::size_t tail = ipow(m, n - p);
  require(phi.size() == head && psi.size() == head * tail, ErrorCode::ShapeMismatch, "tensor oracle: size mismatch");
  std::vector<cplx> out(tail, 0.0);
  for (std::size_t i = 0; i < head; ++i) {
    if (phi[i] == 0.0) continue;
    const cplx w = std::conj(phi[i]);
    for (std::size_t j = 0; j < tail; ++j) out[j] += w * psi[i * tail + j];
  }
  return out;
}

std::vector<BigInt> expansion_coeffs(int M) {
  require(M >= 2, ErrorCode::InvalidArgument, "expansion oracle: M >= 2");
  const int deg = M - 2;
  // homogeneous polynomials of degree deg stored by power of y
  std::vector<BigInt> total(static_cast<std::size_t>(deg + 1), 0);
  for (int j = 0; j <= deg; ++j) {
    const int a = deg - j;
    std::vector<BigInt> binom(static_cast<std::size_t>(a + 1));
    for (int k = 0; k <= a; ++k) {
      mpz_bin_uiui(binom[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(k));
    }
    for (int k = 0; k <= a; ++k) {
      for (int t = 0; t <= j; ++t) {
        if (j % 2) total[static_cast<std::size_t>(k + t)] -= binom[static_cast<std::size_t>(k)];
        else total[static_cast<std::size_t>(k + t)] += binom[static_cast<std::size_t>(k)];
      }
    }
  }
  return total;
}

std::uint64_t brute_bsov_count(int m, int n) {
  require(m <= 24, ErrorCode::Capacity, "bsov oracle: m too large");
  std::uint64_t count = 0;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
    if (__builtin_popcount(s) != n) continue;
    bool ok = true;
    for (int k = 0; 2 * k + 1 < m; ++k) {
      if ((s >> (2 * k) & 1) && (s >> (2 * k + 1) & 1)) ok = false;
    }
    count += ok;
  }
  return count;
}

}  // namespace fermi::oracle
