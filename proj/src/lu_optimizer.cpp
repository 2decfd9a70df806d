#include "fermi/lu_optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "fermi/error.hpp"
#include "fermi/multilinear.hpp"

namespace fermi {
namespace {

constexpr cplx kI(0.0, 1.0);

inline int parity_below(Mask set, int bit) noexcept {
  return std::popcount(set & ((Mask{1} << bit) - 1)) & 1;
}

struct Generator {
  int a;
  int b;  // a == b: E_aa; otherwise two real directions, symmetric then antisymmetric
};

std::vector<Generator> generators(const LuObjective& obj) {
  std::vector<Generator> gens;
  for (const auto& blk : obj.blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      for (std::size_t j = i; j < blk.size(); ++j) gens.push_back({blk[i], blk[j]});
    }
  }
  return gens;
}

}  // namespace

LuObjective::LuObjective(FermionState state, std::vector<char> mask, std::vector<std::vector<int>> gen_blocks)
    : psi(std::move(state)), offending(std::move(mask)), blocks(std::move(gen_blocks)) {
  require(offending.size() == psi.dim(), ErrorCode::ShapeMismatch, "objective: mask size does not match state");
  if (blocks.empty()) {
    std::vector<int> all(static_cast<std::size_t>(psi.m()));
    std::iota(all.begin(), all.end(), 0);
    blocks.push_back(std::move(all));
  }
  std::vector<bool> used(static_cast<std::size_t>(psi.m()), false);
  for (auto& blk : blocks) {
    std::sort(blk.begin(), blk.end());
    for (int a : blk) {
      require(a >= 0 && a < psi.m() && !used[static_cast<std::size_t>(a)], ErrorCode::InvalidArgument,
              "objective: generator blocks must be disjoint mode sets");
      used[static_cast<std::size_t>(a)] = true;
    }
  }
}

int LuObjective::parameter_count() const noexcept {
  int p = 0;
  for (const auto& blk : blocks) p += static_cast<int>(blk.size() * blk.size());
  return p;
}

Eigen::VectorXd lu_residual_vector(const LuObjective& obj, const Eigen::MatrixXcd& u) {
  const FermionState phi = apply_matrix(u, obj.psi);
  std::vector<Eigen::Index> rows;
  for (std::size_t r = 0; r < obj.offending.size(); ++r) {
    if (obj.offending[r]) rows.push_back(static_cast<Eigen::Index>(r));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd out(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k] = phi.amps()[rows[static_cast<std::size_t>(k)]].real();
    out[n + k] = phi.amps()[rows[static_cast<std::size_t>(k)]].imag();
  }
  return out;
}

double lu_residual(const LuObjective& obj, const Eigen::MatrixXcd& u) {
  const FermionState phi = apply_matrix(u, obj.psi);
  double r = 0.0;
  for (std::size_t k = 0; k < obj.offending.size(); ++k) {
    if (obj.offending[k]) r += std::norm(phi.amps()[static_cast<Eigen::Index>(k)]);
  }
  return r;
}

Eigen::MatrixXd lu_jacobian(const LuObjective& obj, const Eigen::MatrixXcd& u) {
  const int m = obj.m();
  const FermionState phi = apply_matrix(u, obj.psi);
  const auto& basis = phi.basis();
  std::vector<Eigen::Index> row_of(basis.size(), -1);
  Eigen::Index n_off = 0;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (obj.offending[r]) row_of[r] = n_off++;
  }
  std::vector<int> block_of(static_cast<std::size_t>(m), -1);
  for (std::size_t k = 0; k < obj.blocks.size(); ++k) {
    for (int a : obj.blocks[k]) block_of[static_cast<std::size_t>(a)] = static_cast<int>(k);
  }

  // t(row, a*m + b) = (a_a^dagger a_b phi) restricted to offending rows
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n_off, m * m);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const cplx v = phi.amps()[static_cast<Eigen::Index>(j)];
    if (v == 0.0) continue;
    const Mask tm = basis.mask(j);
    for (Mask rem = tm; rem; rem &= rem - 1) {
      const int b = std::countr_zero(rem);
      if (block_of[static_cast<std::size_t>(b)] < 0) continue;
      const Mask base = tm & ~(Mask{1} << b);
      const int s1 = parity_below(tm, b);
      for (int a : obj.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(b)])]) {
        if (base >> a & 1) continue;
        const Eigen::Index row = row_of[basis.rank(base | (Mask{1} << a))];
        if (row < 0) continue;
        const double sign = ((s1 ^ parity_below(base, a)) & 1) ? -1.0 : 1.0;
        t(row, a * m + b) += sign * v;
      }
    }
  }

  const auto gens = generators(obj);
  Eigen::MatrixXd jac(2 * n_off, obj.parameter_count());
  Eigen::Index col = 0;
  auto put = [&](const Eigen::VectorXcd& c) {
    jac.col(col).head(n_off) = c.real();
    jac.col(col).tail(n_off) = c.imag();
    ++col;
  };
  for (const auto& g : gens) {
    const Eigen::VectorXcd tab = t.col(g.a * m + g.b);
    if (g.a == g.b) {
      put(kI * tab);
    } else {
      const Eigen::VectorXcd tba = t.col(g.b * m + g.a);
      put(kI * (tab + tba));
      put(tab - tba);
    }
  }
  return jac;
}

Eigen::MatrixXcd lu_exp(const LuObjective& obj, const Eigen::VectorXd& h) {
  const int m = obj.m();
  require(h.size() == obj.parameter_count(), ErrorCode::ShapeMismatch, "lu_exp: parameter size mismatch");
  Eigen::MatrixXcd herm = Eigen::MatrixXcd::Zero(m, m);
  Eigen::Index k = 0;
  for (const auto& g : generators(obj)) {
    if (g.a == g.b) {
      herm(g.a, g.a) += h[k++];
    } else {
      const double s = h[k++];
      const double a = h[k++];
      // s (E_ab + E_ba) + a (-i E_ab + i E_ba)
      herm(g.a, g.b) += cplx(s, -a);
      herm(g.b, g.a) += cplx(s, a);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  Eigen::VectorXcd phases(m);
  for (int i = 0; i < m; ++i) phases[i] = std::exp(kI * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd reunitarize(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

LmRun minimize_lu(const LuObjective& obj, Eigen::MatrixXcd u0, const LmOptions& opts) {
  LmRun run{reunitarize(u0), 0.0, 0};
  Eigen::VectorXd r = lu_residual_vector(obj, run.u);
  run.residual = r.squaredNorm();
  if (r.size() == 0) return run;

  double lambda = -1.0;
  int stalled = 0;
  for (; run.iterations < opts.max_iterations; ++run.iterations) {
    if (run.residual <= opts.stop_residual) break;
    const Eigen::MatrixXd jac = lu_jacobian(obj, run.u);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (lambda < 0.0) lambda = 1e-3 * std::max(normal.diagonal().maxCoeff(), 1e-300);
    if (grad.norm() == 0.0) break;

    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd sys = normal;
      sys.diagonal().array() += lambda;
      const Eigen::VectorXd step = sys.ldlt().solve(-grad);
      const Eigen::MatrixXcd trial = reunitarize(lu_exp(obj, step) * run.u);
      Eigen::VectorXd r_trial = lu_residual_vector(obj, trial);
      const double f_trial = r_trial.squaredNorm();
      if (f_trial < run.residual) {
        const double gain = run.residual - f_trial;
        stalled = gain < opts.stall_fraction * run.residual ? stalled + 1 : 0;
        run.u = trial;
        r = std::move(r_trial);
        run.residual = f_trial;
        lambda = std::max(lambda / 3.0, 1e-300);
        accepted = true;
        break;
      }
      lambda *= 4.0;
      if (!std::isfinite(lambda)) break;
    }
    if (!accepted || stalled >= opts.stall_limit) {
      ++run.iterations;
      break;
    }
  }
  return run;
}

Eigen::MatrixXcd random_block_unitary(int m, const std::vector<std::vector<int>>& blocks, Rng& rng) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  for (const auto& blk : blocks) {
    const int d = static_cast<int>(blk.size());
    const Eigen::MatrixXcd h = haar_unitary(d, rng);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) u(blk[static_cast<std::size_t>(i)], blk[static_cast<std::size_t>(j)]) = h(i, j);
    }
  }
  return u;
}

int default_thread_count() {
  if (const char* env = std::getenv("FERMI_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RestartOutcome minimize_with_restarts(const LuObjective& obj, const RestartOptions& opts) {
  require(opts.restarts >= 1, ErrorCode::InvalidArgument, "restarts must be at least 1");
  const int threads = std::max(1, opts.threads);
  LmOptions lm = opts.lm;
  lm.stop_residual = std::max(lm.stop_residual, 0.0);

  auto run_one = [&](int k) {
    Eigen::MatrixXcd start;
    if (k == 0 && opts.identity_first) {
      start = Eigen::MatrixXcd::Identity(obj.m(), obj.m());
    } else {
      Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(k));
      start = random_block_unitary(obj.m(), obj.blocks, rng);
    }
    return minimize_lu(obj, std::move(start), lm);
  };

  RestartOutcome out;
  std::vector<LmRun> runs;
  for (int first = 0; first < opts.restarts; first += threads) {
    const int last = std::min(opts.restarts, first + threads);
    runs.resize(static_cast<std::size_t>(last));
    if (last - first == 1) {
      runs[static_cast<std::size_t>(first)] = run_one(first);
    } else {
      std::vector<std::jthread> pool;
      for (int k = first; k < last; ++k) {
        pool.emplace_back([&, k] { runs[static_cast<std::size_t>(k)] = run_one(k); });
      }
    }
    bool hit = false;
    for (int k = first; k < last; ++k) {
      const auto& run = runs[static_cast<std::size_t>(k)];
      out.residuals.push_back(run.residual);
      if (out.best_restart < 0 || run.residual < out.best.residual) {
        out.best = run;
        out.best_restart = k;
      }
      if (run.residual <= opts.success_residual && !hit) {
        hit = true;
        if (opts.stop_on_success) {
          out.best = run;
          out.best_restart = k;
          out.residuals.resize(static_cast<std::size_t>(k + 1));
          break;
        }
      }
    }
    if (hit && opts.stop_on_success) break;
  }
  out.success = out.best.residual <= opts.success_residual;
  return out;
}

}  // namespace fermi
