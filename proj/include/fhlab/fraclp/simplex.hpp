#pragma once

#include <cstddef>
#include <vector>

#include "fhlab/core/rational.hpp"

namespace fhlab::fraclp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, greater_equal, equal };
enum class LpStatus { optimal, infeasible, unbounded };

/// optimise objective . x  subject to  matrix[i] . x (relations[i]) rhs[i],  x >= 0.
struct LpProblem {
  Sense sense = Sense::maximize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;

  [[nodiscard]] std::size_t num_variables() const { return objective.size(); }
  [[nodiscard]] std::size_t num_rows() const { return matrix.size(); }
};

/// Dual multipliers follow the convention value = rhs . dual, and at an optimum
/// the reduced costs objective - A^T dual are <= 0 (maximize) or >= 0 (minimize).
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
/// Throws std::invalid_argument on inconsistent dimensions; infeasibility and
/// unboundedness are reported through `status`.
LpSolution solve_lp(const LpProblem& problem);

/// Exact optimality certificate: primal feasibility, dual sign and reduced-cost
/// conditions, complementary slackness and equal objective values.
bool verify_optimality(const LpProblem& problem, const LpSolution& solution);

}  // namespace fhlab::fraclp
