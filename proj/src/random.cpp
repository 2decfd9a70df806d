#include "fermi/random.hpp"

#include <cmath>

namespace fermi {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

Eigen::VectorXcd gaussian_vector(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

Eigen::MatrixXcd haar_unitary(int m, Rng& rng) {
  Eigen::MatrixXcd z(m, m);
  for (int j = 0; j < m; ++j) z.col(j) = gaussian_vector(m, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

FermionState random_state(int m, int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x57a7e);
  FermionState shape(m, n);
  Eigen::VectorXcd v = gaussian_vector(static_cast<Eigen::Index>(shape.dim()), rng);
  return FermionState(m, n, v / v.norm());
}

}  // namespace fermi
