#include "fhlab/fraclp/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace fhlab::fraclp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(const LpProblem& problem) : m_(problem.num_rows()), n_(problem.num_variables()) {
    row_sign_.assign(m_, 1);
    std::vector<Relation> rel = problem.relations;
    std::vector<Rational> rhs = problem.rhs;
    for (std::size_t i = 0; i < m_; ++i) {
      // Normalise so the initial basis is feasible, preferring slack rows.
      const bool flip = (rhs[i] < 0) || (rhs[i] == 0 && rel[i] == Relation::greater_equal);
      if (flip) {
        row_sign_[i] = -1;
        rhs[i] = -rhs[i];
        if (rel[i] == Relation::less_equal) {
          rel[i] = Relation::greater_equal;
        } else if (rel[i] == Relation::greater_equal) {
          rel[i] = Relation::less_equal;
        }
      }
    }

    // Column layout: originals, one slack/surplus per inequality, artificials.
    std::size_t cols = n_;
    std::vector<std::size_t> slack_col(m_, kNone);
    std::vector<std::size_t> art_col(m_, kNone);
    for (std::size_t i = 0; i < m_; ++i)
      if (rel[i] != Relation::equal) slack_col[i] = cols++;
    first_artificial_ = cols;
    for (std::size_t i = 0; i < m_; ++i)
      if (rel[i] != Relation::less_equal) art_col[i] = cols++;
    cols_ = cols;

    rows_.assign(m_, std::vector<Rational>(cols_));
    rhs_ = rhs;
    basis_.assign(m_, kNone);
    unit_col_.assign(m_, kNone);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational sign(row_sign_[i]);
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = problem.matrix[i][j] * sign;
      if (rel[i] == Relation::less_equal) {
        rows_[i][slack_col[i]] = 1;
        basis_[i] = slack_col[i];
      } else {
        if (rel[i] == Relation::greater_equal) rows_[i][slack_col[i]] = -1;
        rows_[i][art_col[i]] = 1;
        basis_[i] = art_col[i];
      }
      unit_col_[i] = basis_[i];
    }
  }

  // Maximises cost . x over the current tableau. Returns false if unbounded.
  bool optimise(const std::vector<Rational>& cost, bool allow_artificial) {
    std::vector<Rational> reduced(cols_);
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < cols_ && entering == kNone; ++j) {
        if (!allow_artificial && j >= first_artificial_) break;
        if (is_basic(j)) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (rows_[i][j] != 0) d -= cost[basis_[i]] * rows_[i][j];
        if (d > 0) entering = j;
      }
      if (entering == kNone) return true;

      std::size_t leaving = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][entering] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][entering];
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == kNone) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    const Rational inv = 1 / rows_[r][c];
    for (auto& v : rows_[r]) v *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational factor = rows_[i][c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= factor * rows_[r][j];
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = c;
  }

  // Pivots zero-level artificials out of the basis where possible.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (rows_[i][j] != 0 && !is_basic(j)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  [[nodiscard]] bool is_basic(std::size_t col) const {
    for (std::size_t b : basis_)
      if (b == col) return true;
    return false;
  }

  [[nodiscard]] Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  [[nodiscard]] std::vector<Rational> primal() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

  // y = c_B B^{-1}, read from the columns that started as unit vectors.
  [[nodiscard]] std::vector<Rational> dual(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      Rational v = 0;
      for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * rows_[i][unit_col_[k]];
      y[k] = v * Rational(row_sign_[k]);
    }
    return y;
  }

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t first_artificial() const { return first_artificial_; }
  [[nodiscard]] std::size_t pivots() const { return pivots_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<int> row_sign_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_col_;
  std::size_t pivots_ = 0;
};

void validate(const LpProblem& p) {
  const std::size_t m = p.num_rows();
  if (p.relations.size() != m || p.rhs.size() != m) {
    throw std::invalid_argument("LP has " + std::to_string(m) + " rows but " +
                                std::to_string(p.relations.size()) + " relations and " +
                                std::to_string(p.rhs.size()) + " right-hand sides");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (p.matrix[i].size() != p.num_variables())
      throw std::invalid_argument("LP row " + std::to_string(i) + " has wrong width");
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  validate(problem);
  Tableau tableau(problem);
  const std::size_t n = problem.num_variables();
  LpSolution solution;

  if (tableau.first_artificial() < tableau.cols()) {
    std::vector<Rational> phase1(tableau.cols());
    for (std::size_t j = tableau.first_artificial(); j < tableau.cols(); ++j) phase1[j] = -1;
    tableau.optimise(phase1, true);
    if (tableau.objective(phase1) < 0) {
      solution.status = LpStatus::infeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.drive_out_artificials();
  }

  const Rational flip(problem.sense == Sense::maximize ? 1 : -1);
  std::vector<Rational> cost(tableau.cols());
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j] * flip;
  if (!tableau.optimise(cost, false)) {
    solution.status = LpStatus::unbounded;
    solution.pivots = tableau.pivots();
    return solution;
  }

  solution.status = LpStatus::optimal;
  solution.value = tableau.objective(cost) * flip;
  solution.primal = tableau.primal();
  solution.dual = tableau.dual(cost);
  for (auto& y : solution.dual) y *= flip;
  solution.pivots = tableau.pivots();
  return solution;
}

bool verify_optimality(const LpProblem& problem, const LpSolution& solution) {
  if (solution.status != LpStatus::optimal) return false;
  const std::size_t m = problem.num_rows();
  const std::size_t n = problem.num_variables();
  if (solution.primal.size() != n || solution.dual.size() != m) return false;
  const bool maximize = problem.sense == Sense::maximize;

  Rational primal_value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (solution.primal[j] < 0) return false;
    primal_value += problem.objective[j] * solution.primal[j];
  }
  Rational dual_value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += problem.matrix[i][j] * solution.primal[j];
    const Rational& y = solution.dual[i];
    switch (problem.relations[i]) {
      case Relation::less_equal:
        if (lhs > problem.rhs[i]) return false;
        if (maximize ? y < 0 : y > 0) return false;
        break;
      case Relation::greater_equal:
        if (lhs < problem.rhs[i]) return false;
        if (maximize ? y > 0 : y < 0) return false;
        break;
      case Relation::equal:
        if (lhs != problem.rhs[i]) return false;
        break;
    }
    if (y != 0 && lhs != problem.rhs[i]) return false;
    dual_value += problem.rhs[i] * y;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational reduced = problem.objective[j];
    for (std::size_t i = 0; i < m; ++i) reduced -= problem.matrix[i][j] * solution.dual[i];
    if (maximize ? reduced > 0 : reduced < 0) return false;
    if (reduced != 0 && solution.primal[j] != 0) return false;
  }
  return primal_value == solution.value && dual_value == solution.value;
}

}  // namespace fhlab::fraclp
