#pragma once

// Positive phi-types over finite parameter sets, m-inconsistency and the
// counting function f_phi(m, k, l).
//
// Consistency means satisfiable in the given finite structure, which stands
// in for the monster model; every report carries that caveat.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhlab/logic/formula.hpp"
#include "fhlab/logic/structure.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::typecount {

using logic::FiniteStructure;
using logic::FormulaTree;
using logic::Value;
using Tuple = std::vector<Value>;

inline constexpr const char* kAmbientCaveat =
    "consistency is satisfiability in the given finite structure";

/// Dense bitset over witness tuples.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size, bool value = false);
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  [[nodiscard]] bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  [[nodiscard]] bool any() const;
  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] std::size_t size() const { return size_; }
  Bits& operator&=(const Bits& other);
  [[nodiscard]] bool intersects(const Bits& other) const;
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// phi(x; y) bound to a structure, with solution sets of instances cached.
class Phi {
 public:
  inline static constexpr std::size_t kWitnessCap = 1u << 20;

  Phi(const logic::Structure& structure, const FormulaTree& formula, std::vector<std::string> x,
      std::vector<std::string> y);

  [[nodiscard]] std::size_t witness_space() const { return witness_space_; }
  [[nodiscard]] std::size_t parameter_arity() const { return y_arity_; }
  /// Witness tuples a with phi(a, b), as a bitset over universe^|x|.
  [[nodiscard]] Bits solutions(const Tuple& b) const;
  [[nodiscard]] const logic::Structure& structure() const { return formula_.structure(); }

 private:
  logic::BoundFormula formula_;
  std::size_t x_arity_;
  std::size_t y_arity_;
  std::size_t witness_space_;
};

struct PositiveType {
  std::vector<std::size_t> instances;  // sorted indices into the parameter list
  Bits witnesses;                      // common solutions, never empty
};

/// Every non-empty set of at most k instances from `parameters` whose
/// conjunction is satisfiable, ordered by size then lexicographically.
/// Throws std::length_error (with the partial count) past `cap` types.
std::vector<PositiveType> enumerate_types(const Phi& phi, const std::vector<Tuple>& parameters,
                                          std::size_t k, std::size_t cap = 200'000);

/// Some p0 in p, q0 in q with |p0|, |q0| <= m have no common witness.
/// `solutions` are the instance solution sets both types index into.
bool m_inconsistent(const PositiveType& p, const PositiveType& q, std::size_t m,
                    const std::vector<Bits>& solutions);

struct CliqueResult {
  std::vector<std::size_t> vertices;
  std::size_t greedy_lower = 0;
  bool exact = true;
};

/// Maximum clique by branch and bound with greedy colouring bounds. Stops
/// after node_cap nodes, returning the best clique found with exact = false.
CliqueResult max_clique(const std::vector<std::vector<bool>>& adjacency,
                        std::uint64_t node_cap = 5'000'000);

enum class SearchMode { exhaustive, sampled };

struct CountOptions {
  std::uint64_t exhaustive_limit = 5000;  // max l-subsets of the pool enumerated
  std::uint64_t samples = 500;
  std::uint64_t seed = 0;
  std::uint64_t node_cap = 5'000'000;
  std::size_t type_cap = 200'000;
};

struct CountReport {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t value = 0;
  bool exact = true;
  std::size_t greedy_lower = 0;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t subsets_examined = 0;
  std::vector<std::size_t> best_parameters;  // indices into the pool
  std::vector<PositiveType> witness;         // instances index best_parameters
  std::uint64_t seed = 0;
};

/// Maximum over l-element A of the pool of the largest pairwise m-inconsistent
/// family of positive types of size <= k over A.
CountReport f_phi(const Phi& phi, std::size_t m, std::size_t k, const std::vector<Tuple>& pool,
                  std::size_t l, const CountOptions& options = {});

/// Universe = ground elements then one element per member; relation In(x, y)
/// holds when x is a ground element of member y. The pool lists the member
/// elements, so phi = ["rel","In","x","y"] has the members as instances.
struct MembershipEncoding {
  FiniteStructure structure;
  std::vector<Tuple> pool;
};
MembershipEncoding encode_membership(const setfam::SetFamily& family);

/// Universe [n] with equality only (no relations).
FiniteStructure equality_structure(std::size_t n);

}  // namespace fhlab::typecount
