#pragma once

// Internal dividing witnesses, complete k-partite subhypergraph search and
// power-saving probes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/typecount/types.hpp"

namespace fhlab::typecount {

/// A formula delta(s_1, ..., s_r; w_1, ..., w_t) over the structure. Each
/// sequence slot s_i and parameter slot w_j names |y| variables, filled with a
/// parameter tuple from the sequence or from C respectively.
struct DeltaFormula {
  FormulaTree formula;
  std::vector<std::vector<std::string>> sequence_slots;
  std::vector<std::vector<std::string>> parameter_slots;
};

enum class DividingStatus { divides, does_not_divide, indeterminate };

struct DividingResult {
  DividingStatus status = DividingStatus::does_not_divide;
  std::optional<std::size_t> instance;   // index into the type's parameters
  std::vector<std::size_t> sequence;     // indices into B, starting at the instance
  std::uint64_t nodes = 0;
};

inline constexpr std::size_t kDefaultMaxSequence = 6;

/// Searches for phi(x, b) in the type and a length-n sequence in B starting at
/// b, Delta-indiscernible over C, whose instances are k-inconsistent.
/// `type_parameters` lists the parameter tuples of the type's instances.
DividingResult internal_dividing_check(const Phi& phi, const std::vector<Tuple>& type_parameters,
                                       const std::vector<Tuple>& B, const std::vector<Tuple>& C,
                                       const std::vector<DeltaFormula>& delta, std::size_t n,
                                       std::size_t k, std::uint64_t node_cap = 2'000'000);

/// True iff every increasing r-tuple of the sequence satisfies the same delta
/// formulas, for every assignment of parameter slots from C.
bool is_indiscernible(const logic::Structure& structure, const std::vector<Tuple>& sequence,
                      const std::vector<Tuple>& C, const std::vector<DeltaFormula>& delta);

using Edge = std::vector<std::uint32_t>;

/// k parts of d vertices each with all d^k transversal edges present. Parts are
/// reported with min(part 1) < min(part 2) < ... and sorted within.
std::optional<std::vector<std::vector<std::uint32_t>>> find_kddd(std::size_t vertices,
                                                                 const std::vector<Edge>& edges,
                                                                 std::size_t d);

/// Incidence graph of points and lines of PG(2, q) identified by the
/// orthogonal polarity: q^2 + q + 1 vertices, no 4-cycles. Loops are dropped.
std::vector<Edge> polarity_graph(std::uint32_t q);

/// Random greedy graph without 4-cycles: candidate pairs are tried in a seeded
/// random order and kept when they close no C4.
std::vector<Edge> random_c4_free_graph(std::size_t vertices, std::uint64_t seed);

struct PowerSavingReport {
  std::vector<std::size_t> l_values;
  std::vector<std::size_t> values;
  bool exact = true;
  std::optional<Rational> exponent_estimate;  // log-log slope, denominator 1000
  Rational zarankiewicz_exponent;             // k - 1/d^(k-1)
  bool saving_consistent = false;             // estimate <= zarankiewicz_exponent
};

/// f_phi(1, k, l) at each l and the log-log slope across l. Needs at least
/// three increasing l values.
PowerSavingReport power_saving_probe(const Phi& phi, std::size_t k, const std::vector<Tuple>& pool,
                                     const std::vector<std::size_t>& l_values, std::size_t d,
                                     const CountOptions& options = {});

}  // namespace fhlab::typecount
