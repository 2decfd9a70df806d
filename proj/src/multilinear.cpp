#include "fermi/multilinear.hpp"

#include <array>
#include <bit>
#include <string>

#include "fermi/error.hpp"

namespace fermi {
namespace {

inline int parity_below(Mask set, int bit) noexcept {
  const Mask below = (Mask{1} << bit) - 1;
  return std::popcount(set & below) & 1;
}

void require_same_modes(const FermionState& a, const FermionState& b, const char* op) {
  require(a.m() == b.m(), ErrorCode::ShapeMismatch,
          std::string(op) + ": mode dimensions differ (" + std::to_string(a.m()) + " vs " +
              std::to_string(b.m()) + ")");
}

template <int N>
cplx small_det(const std::array<int, 8>& rows, const std::array<int, 8>& cols, const Eigen::MatrixXcd& a) {
  auto e = [&](int i, int j) { return a(rows[i], cols[j]); };
  if constexpr (N == 1) {
    return e(0, 0);
  } else if constexpr (N == 2) {
    return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
  } else if constexpr (N == 3) {
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  } else {
    static_assert(N == 4);
    // expansion by 2x2 minors of the first two rows
    const cplx m01 = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    const cplx m02 = e(0, 0) * e(1, 2) - e(0, 2) * e(1, 0);
    const cplx m03 = e(0, 0) * e(1, 3) - e(0, 3) * e(1, 0);
    const cplx m12 = e(0, 1) * e(1, 2) - e(0, 2) * e(1, 1);
    const cplx m13 = e(0, 1) * e(1, 3) - e(0, 3) * e(1, 1);
    const cplx m23 = e(0, 2) * e(1, 3) - e(0, 3) * e(1, 2);
    const cplx c01 = e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0);
    const cplx c02 = e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0);
    const cplx c03 = e(2, 0) * e(3, 3) - e(2, 3) * e(3, 0);
    const cplx c12 = e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1);
    const cplx c13 = e(2, 1) * e(3, 3) - e(2, 3) * e(3, 1);
    const cplx c23 = e(2, 2) * e(3, 3) - e(2, 3) * e(3, 2);
    return m01 * c23 - m02 * c13 + m03 * c12 + m12 * c03 - m13 * c02 + m23 * c01;
  }
}

cplx minor_det(Mask rmask, Mask cmask, int n, const Eigen::MatrixXcd& a) {
  if (n == 0) return 1.0;
  if (n <= 4) {
    std::array<int, 8> rows{};
    std::array<int, 8> cols{};
    for (int k = 0; k < n; ++k) {
      rows[k] = std::countr_zero(rmask);
      rmask &= rmask - 1;
      cols[k] = std::countr_zero(cmask);
      cmask &= cmask - 1;
    }
    switch (n) {
      case 1: return small_det<1>(rows, cols, a);
      case 2: return small_det<2>(rows, cols, a);
      case 3: return small_det<3>(rows, cols, a);
      default: return small_det<4>(rows, cols, a);
    }
  }
  Eigen::MatrixXcd sub(n, n);
  int i = 0;
  for (Mask r = rmask; r; r &= r - 1, ++i) {
    int j = 0;
    for (Mask c = cmask; c; c &= c - 1, ++j) sub(i, j) = a(std::countr_zero(r), std::countr_zero(c));
  }
  return sub.partialPivLu().determinant();
}

}  // namespace

FermionState wedge(const FermionState& phi, const FermionState& psi) {
  require_same_modes(phi, psi, "wedge");
  const int m = phi.m();
  const int n = phi.n() + psi.n();
  require(n <= m, ErrorCode::InvalidArgument,
          "wedge: degree " + std::to_string(n) + " exceeds mode dimension " + std::to_string(m));
  FermionState out(m, n);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out.dim()));
  const auto& bp = phi.basis();
  const auto& bq = psi.basis();
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const cplx a = phi.amps()[static_cast<Eigen::Index>(i)];
    if (a == 0.0) continue;
    const Mask s = bp.mask(i);
    for (std::size_t j = 0; j < bq.size(); ++j) {
      const cplx b = psi.amps()[static_cast<Eigen::Index>(j)];
      const Mask t = bq.mask(j);
      if (b == 0.0 || (s & t)) continue;
      amps[static_cast<Eigen::Index>(out.basis().rank(s | t))] += static_cast<double>(merge_sign(s, t)) * a * b;
    }
  }
  return FermionState(m, n, std::move(amps));
}

cplx inner(const FermionState& phi, const FermionState& psi) {
  require(phi.m() == psi.m() && phi.n() == psi.n(), ErrorCode::ShapeMismatch, "inner: shape mismatch");
  return phi.amps().dot(psi.amps());  // Eigen's dot conjugates the first argument
}

FermionState partial_inner(const FermionState& phi, const FermionState& psi) {
  require_same_modes(phi, psi, "partial_inner");
  require(phi.n() <= psi.n(), ErrorCode::InvalidArgument,
          "partial_inner: first argument degree " + std::to_string(phi.n()) + " exceeds " +
              std::to_string(psi.n()));
  const int m = psi.m();
  const int n = psi.n() - phi.n();
  FermionState out(m, n);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out.dim()));
  const auto& bp = phi.basis();
  const auto& bq = psi.basis();
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const cplx a = std::conj(phi.amps()[static_cast<Eigen::Index>(i)]);
    if (a == 0.0) continue;
    const Mask s = bp.mask(i);
    for (std::size_t j = 0; j < bq.size(); ++j) {
      const Mask t = bq.mask(j);
      if ((s & t) != s) continue;
      const cplx b = psi.amps()[static_cast<Eigen::Index>(j)];
      if (b == 0.0) continue;
      const Mask rest = t & ~s;
      amps[static_cast<Eigen::Index>(out.basis().rank(rest))] += static_cast<double>(merge_sign(s, rest)) * a * b;
    }
  }
  return FermionState(m, n, std::move(amps));
}

FermionState interior(int a, const FermionState& psi) {
  require(a >= 1 && a <= psi.m(), ErrorCode::InvalidArgument, "interior: index out of range");
  require(psi.n() >= 1, ErrorCode::InvalidArgument, "interior: state has no particles");
  FermionState out(psi.m(), psi.n() - 1);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out.dim()));
  const int bit = a - 1;
  const Mask am = Mask{1} << bit;
  const auto& b = psi.basis();
  for (std::size_t j = 0; j < b.size(); ++j) {
    const Mask t = b.mask(j);
    if (!(t & am)) continue;
    const cplx v = psi.amps()[static_cast<Eigen::Index>(j)];
    if (v == 0.0) continue;
    const double sign = parity_below(t, bit) ? -1.0 : 1.0;
    amps[static_cast<Eigen::Index>(out.basis().rank(t & ~am))] += sign * v;
  }
  return FermionState(psi.m(), psi.n() - 1, std::move(amps));
}

FermionState one_vector(const Eigen::VectorXcd& v) {
  return FermionState(static_cast<int>(v.size()), 1, v);
}

FermionState apply_matrix(const Eigen::MatrixXcd& a, const FermionState& psi) {
  require(a.rows() == a.cols() && a.rows() == psi.m(), ErrorCode::ShapeMismatch,
          "apply_unitary: matrix dimension does not match the state");
  const int n = psi.n();
  const auto& b = psi.basis();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
  for (std::size_t s = 0; s < b.size(); ++s) {
    const cplx v = psi.amps()[static_cast<Eigen::Index>(s)];
    if (v == 0.0) continue;
    const Mask cm = b.mask(s);
    for (std::size_t r = 0; r < b.size(); ++r) {
      amps[static_cast<Eigen::Index>(r)] += minor_det(b.mask(r), cm, n, a) * v;
    }
  }
  return FermionState(psi.m(), n, std::move(amps));
}

FermionState apply_unitary(const UnitaryMatrix& u, const FermionState& psi) {
  return apply_matrix(u.matrix(), psi);
}

HermitianMatrix rdm1(const FermionState& psi) {
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "rdm1: zero state");
  require(psi.n() >= 1, ErrorCode::InvalidArgument, "rdm1: state has no particles");
  const int m = psi.m();
  std::vector<Eigen::VectorXcd> cut;
  cut.reserve(m);
  for (int a = 1; a <= m; ++a) cut.push_back(interior(a, psi).amps());
  Eigen::MatrixXcd rho(m, m);
  for (int a = 0; a < m; ++a) {
    for (int c = a; c < m; ++c) {
      rho(a, c) = cut[c].dot(cut[a]);
      rho(c, a) = std::conj(rho(a, c));
    }
  }
  return HermitianMatrix(std::move(rho));
}

HermitianMatrix rdm2(const FermionState& psi) {
  require(psi.n() >= 2, ErrorCode::InvalidArgument, "rdm2: needs at least two particles");
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "rdm2: zero state");
  const auto pairs = Basis::get(psi.m(), 2);
  std::vector<Eigen::VectorXcd> cut;
  cut.reserve(pairs->size());
  for (Mask p : pairs->masks()) {
    const int lo = std::countr_zero(p) + 1;
    const int hi = 31 - std::countl_zero(p) + 1;
    // a_{lo ^ hi} = iota(hi) iota(lo)
    cut.push_back(interior(hi, interior(lo, psi)).amps());
  }
  const auto d = static_cast<Eigen::Index>(pairs->size());
  Eigen::MatrixXcd rho(d, d);
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = p; q < d; ++q) {
      rho(p, q) = cut[static_cast<std::size_t>(q)].dot(cut[static_cast<std::size_t>(p)]);
      rho(q, p) = std::conj(rho(p, q));
    }
  }
  return HermitianMatrix(std::move(rho));
}

Eigen::VectorXcd two_vector_coords(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  require(u.size() == v.size(), ErrorCode::ShapeMismatch, "two_vector_coords: size mismatch");
  const int m = static_cast<int>(u.size());
  const auto pairs = Basis::get(m, 2);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pairs->size()));
  for (std::size_t r = 0; r < pairs->size(); ++r) {
    const Mask p = pairs->mask(r);
    const int i = std::countr_zero(p);
    const int j = 31 - std::countl_zero(p);
    out[static_cast<Eigen::Index>(r)] = u[i] * v[j] - u[j] * v[i];
  }
  return out;
}

DecomposabilityResult is_decomposable(const FermionState& psi, double tol) {
  require(!psi.is_zero(), ErrorCode::DegenerateInput, "is_decomposable: zero state");
  const HermitianMatrix rho = rdm1(psi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  const double cutoff = tol * psi.norm2();
  DecomposabilityResult res;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    if (es.eigenvalues()[k] > cutoff) keep.push_back(k);
  }
  res.support_dim = static_cast<int>(keep.size());
  res.support.resize(psi.m(), res.support_dim);
  for (std::size_t c = 0; c < keep.size(); ++c) {
    res.support.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  }
  res.decomposable = res.support_dim == psi.n();
  return res;
}

FermionState one_body(const Eigen::MatrixXcd& h, const FermionState& psi) {
  const int m = psi.m();
  require(h.rows() == m && h.cols() == m, ErrorCode::ShapeMismatch, "one_body: dimension mismatch");
  const auto& b = psi.basis();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) {
    const cplx v = psi.amps()[static_cast<Eigen::Index>(j)];
    if (v == 0.0) continue;
    const Mask t = b.mask(j);
    for (Mask rem = t; rem; rem &= rem - 1) {
      const int bb = std::countr_zero(rem);
      const Mask base = t & ~(Mask{1} << bb);
      const int s1 = parity_below(t, bb);
      for (int aa = 0; aa < m; ++aa) {
        const cplx hab = h(aa, bb);
        if (hab == 0.0 || (base >> aa & 1)) continue;
        const int s2 = parity_below(base, aa);
        const double sign = ((s1 ^ s2) & 1) ? -1.0 : 1.0;
        amps[static_cast<Eigen::Index>(b.rank(base | (Mask{1} << aa)))] += sign * hab * v;
      }
    }
  }
  return FermionState(m, psi.n(), std::move(amps));
}

}  // namespace fermi
