#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fermi {

using BigInt = mpz_class;
using Exponents = std::vector<int>;

/// Exact multivariate polynomial in x_1..x_m with big-integer coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(int m);
  static MultiPoly constant(int m, const BigInt& c);
  static MultiPoly monomial(Exponents e, const BigInt& c = 1);
  /// Sum of the listed (1-based) variables.
  static MultiPoly linear_form(int m, const std::vector<int>& vars);

  int m() const noexcept { return m_; }
  const std::map<Exponents, BigInt>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const BigInt& c);
  BigInt coeff(const Exponents& e) const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  bool operator==(const MultiPoly& other) const { return m_ == other.m_ && terms_ == other.terms_; }

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  /// Largest exponent of the (0-based) variable.
  int degree_in(int var) const;

  /// Sets the (0-based) variable to zero and drops it: result has m - 1 variables.
  MultiPoly drop_zero_var(int var) const;
  /// Divides by x_1 x_2 ... x_m; requires every exponent to be positive.
  MultiPoly divide_by_all_vars() const;
  /// new variable perm[i] takes the role of old variable i (0-based).
  MultiPoly relabel(const std::vector<int>& perm) const;

  std::string to_string() const;

 private:
  int m_;
  std::map<Exponents, BigInt> terms_;
};

/// Sign of a permutation given in one-line form (0-based).
int permutation_sign(const std::vector<int>& perm);

/// sgn of the exponent vector if it is a permutation of (0, ..., m-1), else 0.
int staircase_sign(const Exponents& e);

using Triple = std::array<int, 3>;

/// Subspace of 3-vectors spanned by every basis triple not in `excluded`.
struct SubspaceSpec {
  int m = 0;
  std::vector<Triple> excluded;

  void validate() const;
  std::uint64_t dimension() const;
};

SubspaceSpec sov_spec(int m);
/// sov_spec plus (1,3,6), (1,4,6) and (1,2i-3,2i-1), 3 <= i <= m/2.
SubspaceSpec minimal_even_spec(int m);
/// sov_spec plus (1,4,m), (2,5,m) and (i,i+2,m), 1 <= i <= m-3.
SubspaceSpec minimal_odd_spec(int m);
SubspaceSpec preset_spec(const std::string& name, int m);

/// One linear form x_i + x_j + x_k per excluded triple.
std::vector<MultiPoly> char_poly(const SubspaceSpec& spec);

/// a_0^(M) ... a_{M-2}^(M) of the two-variable expansion, with a_{M-1}^(M) = 0 appended.
struct CoeffTable {
  int M = 0;
  std::vector<BigInt> values;
  /// a_p with a_p = 0 outside 0..M-1.
  BigInt at(int p) const;
};

CoeffTable coeff_table(int M);

struct PairingOptions {
  /// Drop intermediate states that cannot reach a permutation of (0..m-1).
  bool prune = true;
  int threads = 1;
};

struct PairingResult {
  BigInt value;
  /// Largest number of stored intermediate states.
  std::uint64_t peak_states = 0;
};

/// <prod factors, p> with p = prod_{i<j} (x_j - x_i): sum over exponent vectors e that
/// permute (0..m-1) of sgn(e) * coeff. The product must be homogeneous of degree m(m-1)/2.
PairingResult vandermonde_pairing(const std::vector<MultiPoly>& factors, int m, const PairingOptions& opts = {});

BigInt closed_form_even(int M);
BigInt closed_form_odd(int M);

/// x1 x3 ... x_{M-1} for even M, (x1 x3 ... x_{M-2})^2 for odd M.
Exponents default_multiplier(int M);

/// True when the spec excludes every triple containing a standard pair.
bool contains_sov_exclusions(const SubspaceSpec& spec);

/// Factors of q' in M - 1 variables with <q, p_M> = <q', p_{M-1}>, where q is the
/// characteristic polynomial of `spec` times `extra`. Requires odd M and a spec
/// containing all single occupancy exclusions.
std::vector<MultiPoly> eliminate_last_var(const SubspaceSpec& spec, const std::vector<MultiPoly>& extra = {});

enum class Verdict { Universal, NotUniversalDimBound, Unknown };
std::string verdict_name(Verdict v);

struct Certificate {
  SubspaceSpec spec;
  /// Multiplier description ("1" when none was needed).
  std::string multiplier = "1";
  std::optional<Exponents> multiplier_exponents;
  BigInt pairing = 0;
  Verdict verdict = Verdict::Unknown;
  bool eliminated = false;
  int multipliers_tried = 0;
  std::uint64_t peak_states = 0;
  double seconds = 0.0;
};

enum class Elimination { Auto, On, Off };

struct CertifyOptions {
  int multiplier_budget = 10000;
  /// Use only this multiplier when set.
  std::optional<Exponents> multiplier;
  /// Auto eliminates for odd m >= 11 when the spec allows it.
  Elimination elimination = Elimination::Auto;
  int threads = 1;
};

Certificate certify(const SubspaceSpec& spec, const CertifyOptions& opts = {});

/// Parses "x1*x3^2*x5" or "1" into an exponent vector over m variables.
Exponents parse_monomial(const std::string& text, int m);
std::string monomial_string(const Exponents& e);

struct DimsReport {
  int M = 0;
  int N = 0;
  BigInt total;          // C(M, N)
  BigInt group_bound;    // C(M, 2)
  BigInt lower_bound;    // C(M, N) - C(M, 2)
  BigInt sov_bundle;     // D
  bool bundle_below_total = false;
};

DimsReport dims_report(int M, int N);

}  // namespace fermi
