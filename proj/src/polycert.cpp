#include "fermi/polycert.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "fermi/combination.hpp"
#include "fermi/error.hpp"
#include "fermi/pairs.hpp"

namespace fermi {

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(int m) : m_(m) {
  require(m >= 0, ErrorCode::InvalidArgument, "polynomial: negative variable count");
}

MultiPoly MultiPoly::constant(int m, const BigInt& c) {
  MultiPoly p(m);
  p.add_term(Exponents(static_cast<std::size_t>(m), 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(Exponents e, const BigInt& c) {
  MultiPoly p(static_cast<int>(e.size()));
  for (int x : e) require(x >= 0, ErrorCode::InvalidArgument, "polynomial: negative exponent");
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::linear_form(int m, const std::vector<int>& vars) {
  MultiPoly p(m);
  for (int v : vars) {
    require(v >= 1 && v <= m, ErrorCode::InvalidArgument, "linear form: variable index out of range");
    Exponents e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(v - 1)] = 1;
    p.add_term(e, 1);
  }
  return p;
}

void MultiPoly::add_term(const Exponents& e, const BigInt& c) {
  require(static_cast<int>(e.size()) == m_, ErrorCode::ShapeMismatch, "polynomial: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt MultiPoly::coeff(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  require(m_ == other.m_, ErrorCode::ShapeMismatch, "polynomial: variable count mismatch");
  MultiPoly out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  require(m_ == other.m_, ErrorCode::ShapeMismatch, "polynomial: variable count mismatch");
  MultiPoly out(m_);
  Exponents e(static_cast<std::size_t>(m_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  const int d = total_degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return std::accumulate(t.first.begin(), t.first.end(), 0) == d; });
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
  return d;
}

MultiPoly MultiPoly::drop_zero_var(int var) const {
  require(var >= 0 && var < m_, ErrorCode::InvalidArgument, "polynomial: variable out of range");
  MultiPoly out(m_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<std::size_t>(var)] != 0) continue;
    Exponents r = e;
    r.erase(r.begin() + var);
    out.add_term(r, c);
  }
  return out;
}

MultiPoly MultiPoly::divide_by_all_vars() const {
  MultiPoly out(m_);
  for (const auto& [e, c] : terms_) {
    Exponents r = e;
    for (int& x : r) {
      require(x > 0, ErrorCode::InvalidArgument, "polynomial: term not divisible by every variable");
      --x;
    }
    out.add_term(r, c);
  }
  return out;
}

MultiPoly MultiPoly::relabel(const std::vector<int>& perm) const {
  require(static_cast<int>(perm.size()) == m_, ErrorCode::ShapeMismatch, "polynomial: relabeling size mismatch");
  MultiPoly out(m_);
  Exponents r(static_cast<std::size_t>(m_));
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < m_; ++i) r[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = e[static_cast<std::size_t>(i)];
    out.add_term(r, c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending graded order reads naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const BigInt a = abs(c);
    const std::string mono = monomial_string(e);
    if (mono == "1") os << a.get_str();
    else if (a == 1) os << mono;
    else os << a.get_str() << "*" << mono;
  }
  return os.str();
}

int permutation_sign(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    parity ^= static_cast<int>((len + 1) & 1);
  }
  return parity ? -1 : 1;
}

int staircase_sign(const Exponents& e) {
  const int m = static_cast<int>(e.size());
  std::vector<char> hit(static_cast<std::size_t>(m), 0);
  for (int x : e) {
    if (x < 0 || x >= m || hit[static_cast<std::size_t>(x)]) return 0;
    hit[static_cast<std::size_t>(x)] = 1;
  }
  return permutation_sign(e);
}

// ---------------------------------------------------------------- subspaces

void SubspaceSpec::validate() const {
  require(m >= 3 && m <= 16, ErrorCode::InvalidArgument, "subspace: m must lie in [3, 16]");
  std::set<Triple> seen;
  for (const auto& t : excluded) {
    require(t[0] >= 1 && t[0] < t[1] && t[1] < t[2] && t[2] <= m, ErrorCode::InvalidArgument,
            "subspace: excluded triples must satisfy 1 <= i < j < k <= m");
    require(seen.insert(t).second, ErrorCode::InvalidArgument, "subspace: duplicate excluded triple");
  }
}

std::uint64_t SubspaceSpec::dimension() const { return binomial(m, 3) - excluded.size(); }

SubspaceSpec sov_spec(int m) {
  require(m >= 3 && m <= 16, ErrorCode::InvalidArgument, "subspace: m must lie in [3, 16]");
  SubspaceSpec spec{m, {}};
  for (Mask mask : Basis::get(m, 3)->masks()) {
    if (is_single_occupancy(mask)) continue;
    const auto idx = Combination::from_mask(m, mask).indices();
    spec.excluded.push_back({idx[0], idx[1], idx[2]});
  }
  return spec;
}

SubspaceSpec minimal_even_spec(int m) {
  require(m >= 6 && m % 2 == 0, ErrorCode::InvalidArgument, "minimal-even preset needs even m >= 6");
  SubspaceSpec spec = sov_spec(m);
  spec.excluded.push_back({1, 3, 6});
  spec.excluded.push_back({1, 4, 6});
  for (int i = 3; i <= m / 2; ++i) spec.excluded.push_back({1, 2 * i - 3, 2 * i - 1});
  return spec;
}

SubspaceSpec minimal_odd_spec(int m) {
  require(m >= 7 && m % 2 == 1, ErrorCode::InvalidArgument, "minimal-odd preset needs odd m >= 7");
  SubspaceSpec spec = sov_spec(m);
  spec.excluded.push_back({1, 4, m});
  spec.excluded.push_back({2, 5, m});
  for (int i = 1; i <= m - 3; ++i) spec.excluded.push_back({i, i + 2, m});
  return spec;
}

SubspaceSpec preset_spec(const std::string& name, int m) {
  if (name == "sov") return sov_spec(m);
  if (name == "minimal-even") return minimal_even_spec(m);
  if (name == "minimal-odd") return minimal_odd_spec(m);
  fail(ErrorCode::InvalidArgument, "unknown preset '" + name + "' (expected sov, minimal-even or minimal-odd)");
}

std::vector<MultiPoly> char_poly(const SubspaceSpec& spec) {
  spec.validate();
  std::vector<MultiPoly> out;
  out.reserve(spec.excluded.size());
  for (const auto& t : spec.excluded) out.push_back(MultiPoly::linear_form(spec.m, {t[0], t[1], t[2]}));
  return out;
}

bool contains_sov_exclusions(const SubspaceSpec& spec) {
  const std::set<Triple> have(spec.excluded.begin(), spec.excluded.end());
  const SubspaceSpec sov = sov_spec(spec.m);
  return std::all_of(sov.excluded.begin(), sov.excluded.end(), [&](const Triple& t) { return have.count(t) > 0; });
}

// ---------------------------------------------------------------- coefficients

BigInt CoeffTable::at(int p) const {
  if (p < 0 || p >= static_cast<int>(values.size())) return 0;
  return values[static_cast<std::size_t>(p)];
}

CoeffTable coeff_table(int M) {
  require(M >= 4, ErrorCode::InvalidArgument, "coefficient table needs M >= 4");
  CoeffTable row{4, {1, 1, 1, 0}};
  while (row.M < M) {
    CoeffTable next{row.M + 1, {}};
    const BigInt step = (next.M % 2 == 0) ? 1 : -1;  // (-1)^(M-2)
    for (int p = 0; p <= next.M - 2; ++p) next.values.push_back(row.at(p - 1) + row.at(p) + step);
    next.values.push_back(0);
    row = std::move(next);
  }
  return row;
}

BigInt closed_form_even(int M) {
  require(M >= 6 && M % 2 == 0, ErrorCode::InvalidArgument, "even closed form needs even M >= 6");
  const CoeffTable a = coeff_table(M);
  const int k = M / 2;
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  for (int i = 0; i < k; ++i) out *= a.at(M - 1 - i) - a.at(i);
  return out;
}

BigInt closed_form_odd(int M) {
  require(M >= 7 && M % 2 == 1, ErrorCode::InvalidArgument, "odd closed form needs odd M >= 7");
  const CoeffTable a = coeff_table(M);
  const int k = M / 2;
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  for (int i = 1; i <= k; ++i) out *= a.at(M - i) - a.at(i);
  return out;
}

Exponents default_multiplier(int M) {
  require(M >= 2, ErrorCode::InvalidArgument, "default multiplier needs M >= 2");
  Exponents e(static_cast<std::size_t>(M), 0);
  if (M % 2 == 0) {
    for (int i = 0; i < M; i += 2) e[static_cast<std::size_t>(i)] = 1;
  } else {
    for (int i = 0; i < M - 1; i += 2) e[static_cast<std::size_t>(i)] = 2;
  }
  return e;
}

// ---------------------------------------------------------------- pairing

namespace {

using Key = unsigned __int128;
constexpr int kFieldBits = 4;
constexpr int kUsedShift = 64;

struct KeyHash {
  std::size_t operator()(Key k) const noexcept {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(k)) ^ (mix(static_cast<std::uint64_t>(k >> 64)) << 1));
  }
};

using StateMap = std::unordered_map<Key, BigInt, KeyHash>;

inline int field(Key k, int var) { return static_cast<int>((k >> (kFieldBits * var)) & 0xF); }
inline Key with_field(Key k, int var, int value) {
  const Key mask = Key{0xF} << (kFieldBits * var);
  return (k & ~mask) | (Key(static_cast<unsigned>(value)) << (kFieldBits * var));
}
inline std::uint32_t used_of(Key k) { return static_cast<std::uint32_t>(k >> kUsedShift); }

struct SparseTerm {
  std::vector<std::pair<int, int>> powers;  // (variable, exponent), exponent > 0
  BigInt coeff;
  int unit = 0;  // +1 / -1 when coeff is a unit
};

struct Plan {
  int m = 0;
  int sign = 1;                                  // sign of the relabeling
  int initial_retired = 0;                       // variables without factors, retired up front
  std::vector<std::vector<SparseTerm>> factors;  // relabeled, in processing order
  std::vector<int> retire_after;                 // number of variables retired after each factor (cumulative)
  std::vector<std::vector<int>> growth;          // growth[f][v]: max degree of v in factors after f
};

Plan make_plan(const std::vector<MultiPoly>& polys, int m) {
  const std::size_t nf = polys.size();
  std::vector<std::vector<int>> vars_of(nf);
  std::vector<int> count(static_cast<std::size_t>(m), 0);
  for (std::size_t f = 0; f < nf; ++f) {
    for (int v = 0; v < m; ++v) {
      if (polys[f].degree_in(v) > 0) {
        vars_of[f].push_back(v);
        ++count[static_cast<std::size_t>(v)];
      }
    }
  }

  // retirement order: variables without factors first, then greedily the variable
  // with the fewest unscheduled factors
  std::vector<int> retire_order;
  std::vector<char> retired(static_cast<std::size_t>(m), 0);
  for (int v = 0; v < m; ++v) {
    if (count[static_cast<std::size_t>(v)] == 0) {
      retire_order.push_back(v);
      retired[static_cast<std::size_t>(v)] = 1;
    }
  }
  const int initial = static_cast<int>(retire_order.size());
  std::vector<std::size_t> order;
  std::vector<int> retired_after;
  std::vector<char> scheduled(nf, 0);
  while (order.size() < nf) {
    int pick = -1;
    for (int v = 0; v < m; ++v) {
      if (retired[static_cast<std::size_t>(v)]) continue;
      if (pick < 0 || count[static_cast<std::size_t>(v)] < count[static_cast<std::size_t>(pick)]) pick = v;
    }
    for (std::size_t f = 0; f < nf; ++f) {
      if (scheduled[f] || std::find(vars_of[f].begin(), vars_of[f].end(), pick) == vars_of[f].end()) continue;
      scheduled[f] = 1;
      order.push_back(f);
      for (int v : vars_of[f]) --count[static_cast<std::size_t>(v)];
      for (int v = 0; v < m; ++v) {
        if (!retired[static_cast<std::size_t>(v)] && count[static_cast<std::size_t>(v)] == 0) {
          retired[static_cast<std::size_t>(v)] = 1;
          retire_order.push_back(v);
        }
      }
      retired_after.push_back(static_cast<int>(retire_order.size()));
    }
  }

  Plan plan;
  plan.m = m;
  plan.initial_retired = initial;
  std::vector<int> label(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) label[static_cast<std::size_t>(retire_order[static_cast<std::size_t>(i)])] = i;
  plan.sign = permutation_sign(label);
  plan.retire_after = retired_after;
  for (std::size_t f : order) {
    const MultiPoly rel = polys[f].relabel(label);
    std::vector<SparseTerm> terms;
    for (const auto& [e, c] : rel.terms()) {
      SparseTerm t;
      for (int v = 0; v < m; ++v) {
        if (e[static_cast<std::size_t>(v)] > 0) t.powers.emplace_back(v, e[static_cast<std::size_t>(v)]);
      }
      t.coeff = c;
      t.unit = (c == 1) ? 1 : (c == -1 ? -1 : 0);
      terms.push_back(std::move(t));
    }
    plan.factors.push_back(std::move(terms));
  }
  plan.growth.assign(nf, std::vector<int>(static_cast<std::size_t>(m), 0));
  std::vector<int> suffix(static_cast<std::size_t>(m), 0);
  for (std::size_t f = nf; f-- > 0;) {
    plan.growth[f] = suffix;
    std::vector<int> deg(static_cast<std::size_t>(m), 0);
    for (const auto& t : plan.factors[f]) {
      for (auto [v, p] : t.powers) deg[static_cast<std::size_t>(v)] = std::max(deg[static_cast<std::size_t>(v)], p);
    }
    for (int v = 0; v < m; ++v) suffix[static_cast<std::size_t>(v)] += deg[static_cast<std::size_t>(v)];
  }
  return plan;
}

// Can the active variables still be assigned distinct unused values, each within
// [current, current + growth]?
bool feasible(Key key, int first_active, const Plan& plan, const std::vector<int>& growth) {
  const int m = plan.m;
  const std::uint32_t used = used_of(key);
  std::array<std::pair<int, int>, 16> iv{};
  int n = 0;
  for (int v = first_active; v < m; ++v) {
    const int lo = field(key, v);
    const int hi = std::min(m - 1, lo + growth[static_cast<std::size_t>(v)]);
    iv[static_cast<std::size_t>(n++)] = {hi, lo};
  }
  std::sort(iv.begin(), iv.begin() + n);
  std::uint32_t taken = used;
  for (int i = 0; i < n; ++i) {
    const auto [hi, lo] = iv[static_cast<std::size_t>(i)];
    const std::uint32_t window = ((std::uint32_t{1} << (hi + 1)) - 1) & ~((std::uint32_t{1} << lo) - 1);
    const std::uint32_t free = window & ~taken;
    if (!free) return false;
    taken |= free & (~free + 1);
  }
  return true;
}

// Applies factor f to a range of states, writing into `out`.
void expand_range(const Plan& plan, std::size_t f, int retired_before,
                  const std::vector<std::pair<Key, const BigInt*>>& states, std::size_t lo, std::size_t hi,
                  StateMap& out) {
  const int m = plan.m;
  const int retired_after = plan.retire_after[f];
  const auto& growth = plan.growth[f];
  BigInt tmp;
  for (std::size_t s = lo; s < hi; ++s) {
    const Key key = states[s].first;
    const BigInt& val = *states[s].second;
    for (const auto& term : plan.factors[f]) {
      Key k = key;
      bool ok = true;
      for (auto [v, p] : term.powers) {
        const int e = field(k, v) + p;
        if (e > m - 1) {
          ok = false;
          break;
        }
        k = with_field(k, v, e);
      }
      if (!ok) continue;
      int inversions = 0;
      std::uint32_t used = used_of(k);
      for (int v = retired_before; v < retired_after && ok; ++v) {
        const int e = field(k, v);
        if (used >> e & 1) {
          ok = false;
          break;
        }
        inversions += std::popcount(used >> (e + 1));
        used |= std::uint32_t{1} << e;
        k = with_field(k, v, 0);
      }
      if (!ok) continue;
      k = (k & ((Key{1} << kUsedShift) - 1)) | (Key(used) << kUsedShift);
      if (!feasible(k, retired_after, plan, growth)) continue;
      const bool negate = (inversions & 1) != 0;
      BigInt& slot = out[k];
      if (term.unit != 0) {
        if ((term.unit < 0) != negate) slot -= val;
        else slot += val;
      } else {
        tmp = term.coeff * val;
        if (negate) slot -= tmp;
        else slot += tmp;
      }
    }
  }
}

BigInt naive_pairing(const std::vector<MultiPoly>& factors, int m) {
  MultiPoly prod = MultiPoly::constant(m, 1);
  for (const auto& f : factors) prod = prod * f;
  BigInt out = 0;
  for (const auto& [e, c] : prod.terms()) {
    const int s = staircase_sign(e);
    if (s > 0) out += c;
    else if (s < 0) out -= c;
  }
  return out;
}

}  // namespace

PairingResult vandermonde_pairing(const std::vector<MultiPoly>& factors, int m, const PairingOptions& opts) {
  require(m >= 1 && m <= 16, ErrorCode::Capacity, "pairing: supports 1 <= m <= 16 variables");
  int degree = 0;
  for (const auto& f : factors) {
    require(f.m() == m, ErrorCode::ShapeMismatch, "pairing: factor has the wrong variable count");
    require(!f.is_zero(), ErrorCode::InvalidArgument, "pairing: zero factor");
    require(f.is_homogeneous(), ErrorCode::InvalidArgument, "pairing: factors must be homogeneous");
    degree += f.total_degree();
  }
  const int delta = m * (m - 1) / 2;
  require(degree == delta, ErrorCode::InvalidArgument,
          "pairing: product degree " + std::to_string(degree) + " differs from m(m-1)/2 = " + std::to_string(delta));

  PairingResult res;
  if (!opts.prune) {
    res.value = naive_pairing(factors, m);
    return res;
  }

  const Plan plan = make_plan(factors, m);
  // variables without factors all sit at exponent 0
  if (plan.initial_retired > 1) {
    res.value = 0;
    return res;
  }
  StateMap states;
  states.emplace(plan.initial_retired == 1 ? (Key{1} << kUsedShift) : Key{0}, BigInt(plan.sign));
  res.peak_states = 1;
  int retired = plan.initial_retired;
  const int threads = std::max(1, opts.threads);
  for (std::size_t f = 0; f < plan.factors.size(); ++f) {
    std::vector<std::pair<Key, const BigInt*>> flat;
    flat.reserve(states.size());
    for (const auto& [k, v] : states) flat.emplace_back(k, &v);
    // deterministic traversal independent of hashing
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    StateMap next;
    if (threads == 1 || flat.size() < 4096) {
      expand_range(plan, f, retired, flat, 0, flat.size(), next);
    } else {
      std::vector<StateMap> parts(static_cast<std::size_t>(threads));
      {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (flat.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
          const std::size_t lo = std::min(flat.size(), chunk * static_cast<std::size_t>(t));
          const std::size_t hi = std::min(flat.size(), lo + chunk);
          pool.emplace_back([&, t, lo, hi] { expand_range(plan, f, retired, flat, lo, hi, parts[static_cast<std::size_t>(t)]); });
        }
      }
      next = std::move(parts[0]);
      for (std::size_t t = 1; t < parts.size(); ++t) {
        for (auto& [k, v] : parts[t]) next[k] += v;
        StateMap().swap(parts[t]);
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    states = std::move(next);
    retired = plan.retire_after[f];
    res.peak_states = std::max<std::uint64_t>(res.peak_states, states.size());
    if (states.empty()) break;
  }
  res.value = 0;
  for (const auto& [k, v] : states) res.value += v;
  return res;
}

// ---------------------------------------------------------------- elimination

std::vector<MultiPoly> eliminate_last_var(const SubspaceSpec& spec, const std::vector<MultiPoly>& extra) {
  spec.validate();
  const int M = spec.m;
  require(M % 2 == 1 && M >= 7, ErrorCode::InvalidArgument, "elimination needs odd m >= 7");
  require(contains_sov_exclusions(spec), ErrorCode::InvalidArgument,
          "elimination needs a spec excluding every triple that contains a standard pair");
  const CoeffTable a = coeff_table(M);
  const int K = M / 2;
  std::vector<MultiPoly> out;
  // reduced single-occupancy factor per pair: sum_{k=1}^{M-3} a_k x^{M-3-k} y^{k-1}
  for (int i = 0; i < K; ++i) {
    MultiPoly g(M - 1);
    for (int k = 1; k <= M - 3; ++k) {
      Exponents e(static_cast<std::size_t>(M - 1), 0);
      e[static_cast<std::size_t>(2 * i)] = M - 3 - k;
      e[static_cast<std::size_t>(2 * i + 1)] = k - 1;
      g.add_term(e, a.at(k));
    }
    out.push_back(std::move(g));
  }
  for (const auto& t : spec.excluded) {
    const Mask mask = (Mask{1} << (t[0] - 1)) | (Mask{1} << (t[1] - 1)) | (Mask{1} << (t[2] - 1));
    if (!is_single_occupancy(mask)) continue;
    MultiPoly f = MultiPoly::linear_form(M, {t[0], t[1], t[2]}).drop_zero_var(M - 1);
    require(!f.is_zero(), ErrorCode::Internal, "elimination: vanishing factor");
    out.push_back(std::move(f));
  }
  for (const auto& p : extra) {
    require(p.m() == M, ErrorCode::ShapeMismatch, "elimination: multiplier has the wrong variable count");
    MultiPoly f = p.drop_zero_var(M - 1);
    if (f.is_zero()) return {MultiPoly(M - 1)};
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- certify

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Universal: return "Universal";
    case Verdict::NotUniversalDimBound: return "NotUniversalDimBound";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string monomial_string(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

Exponents parse_monomial(const std::string& text, int m) {
  Exponents e(static_cast<std::size_t>(m), 0);
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  require(!s.empty(), ErrorCode::Parse, "monomial: empty text");
  if (s == "1") return e;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, '*')) {
    require(tok.size() >= 2 && tok[0] == 'x', ErrorCode::Parse, "monomial: expected factors like x3 or x3^2, got '" + tok + "'");
    const auto caret = tok.find('^');
    int var = 0;
    int pw = 1;
    try {
      std::size_t used = 0;
      var = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), &used);
      require(used == (caret == std::string::npos ? tok.size() - 1 : caret - 1), ErrorCode::Parse, "monomial: bad variable");
      if (caret != std::string::npos) {
        pw = std::stoi(tok.substr(caret + 1), &used);
        require(used == tok.size() - caret - 1, ErrorCode::Parse, "monomial: bad exponent");
      }
    } catch (const std::logic_error&) {
      fail(ErrorCode::Parse, "monomial: cannot parse '" + tok + "'");
    }
    require(var >= 1 && var <= m, ErrorCode::Parse, "monomial: variable index out of range in '" + tok + "'");
    require(pw >= 0, ErrorCode::Parse, "monomial: negative exponent in '" + tok + "'");
    e[static_cast<std::size_t>(var - 1)] += pw;
  }
  return e;
}

namespace {

// Next exponent vector of the same total degree in lexicographically decreasing order
// (x1^d first). Returns false after the last one.
bool next_monomial(Exponents& e) {
  const int m = static_cast<int>(e.size());
  // find the rightmost position i < m-1 with e[i] > 0
  int i = m - 2;
  while (i >= 0 && e[static_cast<std::size_t>(i)] == 0) --i;
  if (i < 0) return false;
  const int tail = e[static_cast<std::size_t>(m - 1)];
  --e[static_cast<std::size_t>(i)];
  e[static_cast<std::size_t>(m - 1)] = 0;
  e[static_cast<std::size_t>(i + 1)] = tail + 1;
  return true;
}

BigInt pairing_with(const SubspaceSpec& spec, const Exponents& mu, bool eliminate, const CertifyOptions& opts,
                    std::uint64_t& peak) {
  std::vector<MultiPoly> extra;
  if (std::any_of(mu.begin(), mu.end(), [](int x) { return x > 0; })) extra.push_back(MultiPoly::monomial(mu));
  PairingOptions po;
  po.threads = opts.threads;
  PairingResult r;
  if (eliminate) {
    const auto factors = eliminate_last_var(spec, extra);
    if (factors.size() == 1 && factors[0].is_zero()) return 0;
    r = vandermonde_pairing(factors, spec.m - 1, po);
  } else {
    auto factors = char_poly(spec);
    for (auto& p : extra) factors.push_back(std::move(p));
    r = vandermonde_pairing(factors, spec.m, po);
  }
  peak = std::max(peak, r.peak_states);
  return r.value;
}

}  // namespace

Certificate certify(const SubspaceSpec& spec, const CertifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  spec.validate();
  Certificate cert;
  cert.spec = spec;
  const int m = spec.m;
  const int d = static_cast<int>(spec.excluded.size());
  const int delta = m * (m - 1) / 2;
  auto finish = [&]() {
    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
  };
  if (d > delta) {
    cert.verdict = Verdict::NotUniversalDimBound;
    return finish();
  }

  const bool can_eliminate = m % 2 == 1 && m >= 7 && contains_sov_exclusions(spec);
  switch (opts.elimination) {
    case Elimination::On:
      require(can_eliminate, ErrorCode::InvalidArgument,
              "--eliminate-last-var needs odd m >= 7 and a spec excluding every non single occupancy triple");
      cert.eliminated = true;
      break;
    case Elimination::Off: cert.eliminated = false; break;
    case Elimination::Auto: cert.eliminated = can_eliminate && m >= 11; break;
  }

  auto attempt = [&](const Exponents& mu) {
    ++cert.multipliers_tried;
    const BigInt v = pairing_with(spec, mu, cert.eliminated, opts, cert.peak_states);
    if (v != 0) {
      cert.pairing = v;
      cert.multiplier = monomial_string(mu);
      cert.multiplier_exponents = mu;
      cert.verdict = Verdict::Universal;
      return true;
    }
    return false;
  };

  const int need = delta - d;
  if (opts.multiplier) {
    const Exponents& mu = *opts.multiplier;
    require(static_cast<int>(mu.size()) == m, ErrorCode::ShapeMismatch, "multiplier has the wrong variable count");
    require(std::accumulate(mu.begin(), mu.end(), 0) == need, ErrorCode::InvalidArgument,
            "multiplier degree must be m(m-1)/2 - |excluded| = " + std::to_string(need));
    if (!attempt(mu)) {
      cert.multiplier = monomial_string(mu);
      cert.multiplier_exponents = mu;
    }
    return finish();
  }

  if (need == 0) {
    attempt(Exponents(static_cast<std::size_t>(m), 0));
    if (cert.verdict != Verdict::Universal) cert.multiplier = "1";
    return finish();
  }

  std::set<Exponents> tried;
  const Exponents preferred = default_multiplier(m);
  if (std::accumulate(preferred.begin(), preferred.end(), 0) == need) {
    tried.insert(preferred);
    if (attempt(preferred)) return finish();
  }
  Exponents mu(static_cast<std::size_t>(m), 0);
  mu[0] = need;
  int budget = opts.multiplier_budget;
  do {
    if (budget <= 0) break;
    if (tried.count(mu)) continue;
    --budget;
    if (attempt(mu)) return finish();
  } while (next_monomial(mu));
  cert.multiplier = "none found";
  return finish();
}

// ---------------------------------------------------------------- dimensions

DimsReport dims_report(int M, int N) {
  require(N >= 2 && M >= 2 * N, ErrorCode::InvalidArgument, "dims: need N >= 2 and M >= 2N");
  auto binom = [](int n, int k) {
    BigInt out;
    if (k < 0 || k > n) return BigInt(0);
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
  };
  DimsReport r;
  r.M = M;
  r.N = N;
  r.total = binom(M, N);
  r.group_bound = binom(M, 2);
  r.lower_bound = r.total - r.group_bound;
  const int K = M / 2;
  const BigInt two_n = BigInt(1) << N;
  if (M % 2 == 0) {
    r.sov_bundle = 4 * BigInt(K) * (K - 1) + two_n * binom(K, N);
  } else {
    r.sov_bundle = 4 * BigInt(K) * K + two_n * binom(K, N) + (two_n / 2) * binom(K, N - 1);
  }
  r.bundle_below_total = r.sov_bundle < r.total;
  return r;
}

}  // namespace fermi
