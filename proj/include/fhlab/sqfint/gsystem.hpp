#pragma once

// Special formulas, G-systems, local satisfiability, the explicit density
// certificate and windowed solution counts over (Z, +, Sqf).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/setfam/checks.hpp"

namespace fhlab::sqfint {

/// coefficient_x * x + sum z_i * c_i + sum z'_j * c'_j + constant.
struct LinearTerm {
  std::int64_t x = 0;
  std::vector<std::int64_t> z;
  std::vector<std::int64_t> z_prime;
  std::int64_t constant = 0;
};

/// Boolean combination of atoms "t not in U_{p,l}". A conjunction with no
/// children is the trivial condition.
struct PCondition {
  enum class Kind { not_in_u, conjunction, disjunction, negation };
  Kind kind = Kind::conjunction;
  LinearTerm term;     // not_in_u only
  unsigned level = 0;  // not_in_u only
  std::vector<PCondition> children;

  static PCondition atom(LinearTerm term, unsigned level);
  [[nodiscard]] unsigned max_level() const;
};

/// theta /\ AND_{i<s} (kx + z_i in P_m) /\ AND_{j<s'} (kx + z'_j not in P_m).
struct SpecialFormula {
  std::int64_t k = 1;
  std::uint64_t m = 1;
  std::size_t s = 0;
  std::size_t s_prime = 0;
  std::map<std::uint64_t, PCondition> theta;  // prime -> condition

  /// Throws std::invalid_argument on k = 0, m = 0, non-prime keys or terms whose
  /// z / z' arity does not match s / s'.
  void validate() const;
  [[nodiscard]] bool positive() const { return s_prime == 0; }
};

struct GSystem {
  SpecialFormula formula;
  std::vector<std::int64_t> c;
  std::vector<std::int64_t> c_prime;

  void validate() const;
  /// c_i != c'_j for all i, j.
  [[nodiscard]] bool nontrivial() const;
  /// Direct evaluation of the system at x.
  [[nodiscard]] bool holds(std::int64_t x) const;
};

struct PSatisfiability {
  bool satisfiable = false;
  std::optional<std::uint64_t> witness;  // least residue satisfying psi_p
  std::uint64_t modulus = 1;             // p^L, L the largest level involved
};

/// Decides the associated p-condition by enumerating residues mod p^L.
PSatisfiability p_satisfiable(const GSystem& system, std::uint64_t p);

/// Primes at which psi_p can fail: primes of theta, primes dividing k, and
/// primes with p^2 <= s. At every other prime psi_p is satisfiable.
std::vector<std::uint64_t> local_obstruction_primes(const GSystem& system);

/// First prime at which the system is not p-satisfiable, if any.
std::optional<std::uint64_t> first_unsatisfiable_prime(const GSystem& system);

struct DensityCertificate {
  Rational epsilon_lower;
  Rational epsilon_upper;
  std::uint64_t B = 0;  // largest local prime, 0 when there is none
  BigInt D = 1;
  std::uint64_t tail_prime = 0;
  std::vector<std::uint64_t> local_primes;  // absorbed into D
  std::size_t n = 0;
  std::int64_t k = 1;
};

/// Lower bracket on the density of solutions of any all-p-satisfiable positive
/// system built from `formula`:
///   eps = 1/(2D) * prod_{non-local p} (1 - n/p^{l_p}),  l_p = 2 + v_p(m),
/// where the local primes are those of theta, those dividing k, and those with
/// n >= p^{l_p}, and D = prod_{local p} p^{max(l_p, top theta level)}.
/// The product is truncated at tail_prime; the tail is bounded below by
/// 1 - 2n/tail_prime. Requires a positive formula and tail_prime > 2n.
DensityCertificate density_certificate(const SpecialFormula& formula, std::uint64_t tail_prime);

/// sum_i (sqrt|c_i| + sqrt|k t + c_i|) + 1.
double error_term(const GSystem& system, std::int64_t t);

/// Integer lower bound of error_term (square roots floored), for exact comparisons.
std::int64_t error_term_floor(const GSystem& system, std::int64_t t);

/// count >= eps * t - error_term(t), decided exactly via error_term_floor.
bool meets_density_bound(std::uint64_t count, const Rational& epsilon, const GSystem& system,
                         std::int64_t t);

/// Membership mask of the window (0, t): entry a - 1 is true iff the system holds at a.
std::vector<bool> solution_mask(const GSystem& system, std::int64_t t);

/// |{a : 0 < a < t, system holds at a}|. Values k*a + c are checked against
/// 64-bit overflow; failures name the offending form.
std::uint64_t count_solutions_window(const GSystem& system, std::int64_t t);

/// Exact count of square-free integers in (0, t).
std::uint64_t count_squarefree(std::int64_t t);

struct SqfFhpReport {
  setfam::FhpReport fhp;
  std::int64_t window = 0;
  DensityCertificate certificate;  // of the positive part
  Rational delta;                  // epsilon_lower / 2
  Rational gamma;                  // (s+s')!/(s+s')^(s+s')
  Rational beta_theory;
  bool all_empty = false;
};

/// Family of solution sets of formula(x, c_i, c'_i) restricted to (0, window)
/// (ground element a - 1 stands for a), run through check_fhp_instance.
/// beta_theory is alpha*gamma*delta / (s s' (s+s')^s), or alpha*delta when
/// s' = 0.
SqfFhpReport sqf_fhp_experiment(
    const SpecialFormula& formula,
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>& parameters,
    std::size_t k, const Rational& alpha, std::int64_t window, std::uint64_t tail_prime = 10007);

struct DicksonResult {
  bool admissible = true;
  std::optional<std::uint64_t> obstruction;
  std::uint64_t checked_up_to = 0;
};

/// Whether some residue avoids every root of prod (a_i t + b_i) modulo each
/// prime. Primes above the number of forms can only obstruct when they divide
/// some gcd(a_i, b_i); those are checked too, so the verdict is exact.
DicksonResult dickson_admissible(const std::vector<std::pair<std::int64_t, std::int64_t>>& forms,
                                 std::uint64_t prime_bound);

}  // namespace fhlab::sqfint
