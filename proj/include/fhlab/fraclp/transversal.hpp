#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/fraclp/simplex.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::fraclp {

using setfam::Element;
using setfam::SetFamily;

/// Ground elements grouped by identical membership pattern. Elements in no
/// member are dropped; each atom is represented by its smallest element.
struct AtomPartition {
  std::vector<Element> representative;
  std::vector<std::vector<Element>> elements;
  std::vector<std::vector<std::size_t>> member_atoms;  // atoms of each member, sorted
};

AtomPartition atomize(const SetFamily& family);

struct IntersectionNumber {
  Rational value;
  std::map<Element, Rational> distribution;  // witness probability measure
  bool degenerate = false;                    // some member is empty; value is 0
  LpSolution lp;
};

struct TransversalResult {
  bool feasible = true;  // false iff some member is empty
  Rational tau_star;
  std::map<Element, Rational> weights;
  std::optional<std::size_t> integer_tau;
  std::optional<std::vector<Element>> integer_witness;
  LpSolution lp;
};

struct HittingSet {
  std::size_t size = 0;
  std::vector<Element> witness;
};

/// The LPs are built over atoms, so their size depends on the number of
/// distinct membership patterns rather than on the ground size.
LpProblem intersection_lp(const SetFamily& family, const AtomPartition& atoms);
LpProblem transversal_lp(const SetFamily& family, const AtomPartition& atoms);

/// max t  s.t.  mu(S) >= t for every member, mu a probability measure.
IntersectionNumber intersection_number(const SetFamily& family);

/// min sum phi  s.t.  phi(S) >= 1 for every member.
TransversalResult fractional_transversal(const SetFamily& family);

/// Smallest set of ground elements meeting every member, if one of size <= cap
/// exists. Branch and bound on the smallest unhit member.
std::optional<HittingSet> min_transversal_exact(const SetFamily& family, std::size_t cap);

}  // namespace fhlab::fraclp
