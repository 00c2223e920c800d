#include "fhlab/typecount/dividing.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fhlab/core/random.hpp"
#include "fhlab/vc/shatter.hpp"

namespace fhlab::typecount {

namespace {

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// A delta formula bound to the structure with every assignment of its
// parameter slots from C precomputed.
struct BoundDelta {
  logic::BoundFormula formula;
  std::size_t r;
  std::size_t y_arity;
  std::vector<Tuple> parameter_values;  // flattened C-assignments
};

std::vector<BoundDelta> bind_deltas(const logic::Structure& structure,
                                    const std::vector<DeltaFormula>& delta,
                                    const std::vector<Tuple>& C, std::size_t y_arity) {
  std::vector<BoundDelta> out;
  for (const auto& d : delta) {
    std::vector<std::string> vars;
    for (const auto& slot : d.sequence_slots) {
      if (slot.size() != y_arity) throw std::invalid_argument("delta sequence slot has the wrong arity");
      vars.insert(vars.end(), slot.begin(), slot.end());
    }
    for (const auto& slot : d.parameter_slots) {
      if (slot.size() != y_arity) throw std::invalid_argument("delta parameter slot has the wrong arity");
      vars.insert(vars.end(), slot.begin(), slot.end());
    }
    std::vector<Tuple> assignments = {{}};
    for (std::size_t s = 0; s < d.parameter_slots.size(); ++s) {
      std::vector<Tuple> next;
      for (const auto& partial : assignments)
        for (const auto& c : C) {
          auto ext = partial;
          ext.insert(ext.end(), c.begin(), c.end());
          next.push_back(std::move(ext));
        }
      assignments = std::move(next);
    }
    out.push_back({logic::BoundFormula(d.formula, structure, vars), d.sequence_slots.size(), y_arity,
                   std::move(assignments)});
  }
  return out;
}

bool eval_delta(const BoundDelta& d, const std::vector<Tuple>& sequence,
                const std::vector<std::size_t>& positions, const Tuple& params) {
  Tuple args;
  for (std::size_t pos : positions) args.insert(args.end(), sequence[pos].begin(), sequence[pos].end());
  args.insert(args.end(), params.begin(), params.end());
  return d.formula.holds(args);
}

class DividingSearch {
 public:
  DividingSearch(const Phi& phi, const std::vector<Tuple>& B, std::vector<BoundDelta> deltas,
                 std::size_t n, std::size_t k, std::uint64_t node_cap)
      : B_(B), deltas_(std::move(deltas)), n_(n), k_(k), node_cap_(node_cap) {
    for (const auto& b : B_) sols_.push_back(phi.solutions(b));
    reference_.resize(deltas_.size());
    for (std::size_t i = 0; i < deltas_.size(); ++i)
      reference_[i].assign(deltas_[i].parameter_values.size(), false);
  }

  // Returns true when a witness was found starting at B[start].
  bool run(std::size_t start) {
    chosen_.assign(1, start);
    seq_.assign(1, B_[start]);
    if (!accept_last()) return false;
    return extend();
  }

  [[nodiscard]] const std::vector<std::size_t>& chosen() const { return chosen_; }
  [[nodiscard]] bool aborted() const { return aborted_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool extend() {
    if (chosen_.size() == n_) return true;
    for (std::size_t i = 0; i < B_.size(); ++i) {
      if (++nodes_ > node_cap_) {
        aborted_ = true;
        return false;
      }
      chosen_.push_back(i);
      seq_.push_back(B_[i]);
      if (accept_last() && extend()) return true;
      chosen_.pop_back();
      seq_.pop_back();
      if (aborted_) return false;
    }
    return false;
  }

  // Checks the constraints involving the newest position.
  bool accept_last() {
    const std::size_t j = chosen_.size() - 1;
    // k-inconsistency of every k positions containing j
    if (j + 1 >= k_) {
      std::vector<std::size_t> others(k_ - 1);
      std::iota(others.begin(), others.end(), std::size_t{0});
      do {
        Bits w = sols_[chosen_[j]];
        for (std::size_t o : others) w &= sols_[chosen_[o]];
        if (w.any()) return false;
      } while (k_ > 1 && next_combination(others, j));
    }
    // indiscernibility of every increasing r-tuple ending at j
    for (std::size_t di = 0; di < deltas_.size(); ++di) {
      const auto& d = deltas_[di];
      if (d.r == 0 || j + 1 < d.r) continue;
      std::vector<std::size_t> prefix(d.r - 1);
      std::iota(prefix.begin(), prefix.end(), std::size_t{0});
      do {
        auto positions = prefix;
        positions.push_back(j);
        for (std::size_t a = 0; a < d.parameter_values.size(); ++a) {
          const bool value = eval_delta(d, seq_, positions, d.parameter_values[a]);
          if (j + 1 == d.r) {
            reference_[di][a] = value;
          } else if (value != reference_[di][a]) {
            return false;
          }
        }
      } while (d.r > 1 && next_combination(prefix, j));
    }
    return true;
  }

  const std::vector<Tuple>& B_;
  std::vector<BoundDelta> deltas_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t node_cap_;
  std::vector<Bits> sols_;
  std::vector<std::vector<bool>> reference_;
  std::vector<std::size_t> chosen_;
  std::vector<Tuple> seq_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

bool is_indiscernible(const logic::Structure& structure, const std::vector<Tuple>& sequence,
                      const std::vector<Tuple>& C, const std::vector<DeltaFormula>& delta) {
  if (sequence.empty()) return true;
  const auto deltas = bind_deltas(structure, delta, C, sequence.front().size());
  for (const auto& d : deltas) {
    if (d.r == 0 || d.r > sequence.size()) continue;
    for (const auto& params : d.parameter_values) {
      std::vector<std::size_t> positions(d.r);
      std::iota(positions.begin(), positions.end(), std::size_t{0});
      const bool first = eval_delta(d, sequence, positions, params);
      while (next_combination(positions, sequence.size()))
        if (eval_delta(d, sequence, positions, params) != first) return false;
    }
  }
  return true;
}

DividingResult internal_dividing_check(const Phi& phi, const std::vector<Tuple>& type_parameters,
                                       const std::vector<Tuple>& B, const std::vector<Tuple>& C,
                                       const std::vector<DeltaFormula>& delta, std::size_t n,
                                       std::size_t k, std::uint64_t node_cap) {
  if (k < 1 || n < k) throw std::invalid_argument("dividing needs 1 <= k <= n");
  for (const auto& c : C)
    if (std::find(B.begin(), B.end(), c) == B.end())
      throw std::invalid_argument("C must be a subset of B");
  DividingSearch search(phi, B, bind_deltas(phi.structure(), delta, C, phi.parameter_arity()), n, k,
                        node_cap);
  DividingResult result;
  bool aborted = false;
  for (std::size_t t = 0; t < type_parameters.size(); ++t) {
    const auto it = std::find(B.begin(), B.end(), type_parameters[t]);
    if (it == B.end()) continue;
    const bool found = search.run(static_cast<std::size_t>(it - B.begin()));
    result.nodes = search.nodes();
    if (found) {
      result.status = DividingStatus::divides;
      result.instance = t;
      result.sequence = search.chosen();
      return result;
    }
    aborted = aborted || search.aborted();
    if (aborted) break;
  }
  result.status = aborted ? DividingStatus::indeterminate : DividingStatus::does_not_divide;
  return result;
}

std::optional<std::vector<std::vector<std::uint32_t>>> find_kddd(std::size_t vertices,
                                                                 const std::vector<Edge>& edges,
                                                                 std::size_t d) {
  if (d == 0) throw std::invalid_argument("find_kddd needs d >= 1");
  if (edges.empty()) return std::nullopt;
  const std::size_t k = edges.front().size();
  if (k == 0) throw std::invalid_argument("edges must be non-empty");
  std::set<Edge> edge_set;
  std::vector<std::vector<bool>> co(vertices, std::vector<bool>(vertices, false));
  for (auto e : edges) {
    if (e.size() != k) throw std::invalid_argument("hypergraph is not uniform");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("edge repeats a vertex");
    for (auto v : e)
      if (v >= vertices) throw std::invalid_argument("edge vertex outside the vertex set");
    for (auto u : e)
      for (auto v : e) co[u][v] = true;
    edge_set.insert(std::move(e));
  }
  if (k * d > vertices) return std::nullopt;

  std::vector<std::vector<std::uint32_t>> parts(k);
  std::vector<bool> used(vertices, false);

  auto all_transversals = [&]() {
    std::vector<std::size_t> pick(k, 0);
    for (;;) {
      Edge e(k);
      for (std::size_t i = 0; i < k; ++i) e[i] = parts[i][pick[i]];
      std::sort(e.begin(), e.end());
      if (edge_set.count(e) == 0) return false;
      std::size_t i = k;
      while (i > 0 && ++pick[i - 1] == d) pick[--i] = 0;
      if (i == 0) return true;
    }
  };

  std::function<bool(std::size_t)> place = [&](std::size_t part) -> bool {
    if (part == k) return all_transversals();
    auto& current = parts[part];
    if (current.size() == d) return place(part + 1);
    std::uint32_t start = current.empty() ? 0 : current.back() + 1;
    if (current.empty() && part > 0) start = parts[part - 1].front() + 1;
    for (std::uint32_t v = start; v < vertices; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t q = 0; q < part && ok; ++q)
        for (auto u : parts[q])
          if (!co[u][v]) {
            ok = false;
            break;
          }
      if (!ok) continue;
      used[v] = true;
      current.push_back(v);
      if (place(part)) return true;
      current.pop_back();
      used[v] = false;
    }
    return false;
  };
  if (place(0)) return parts;
  return std::nullopt;
}

std::vector<Edge> polarity_graph(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("polarity graph needs a prime q");
  for (std::uint32_t f = 2; f * f <= q; ++f)
    if (q % f == 0) throw std::invalid_argument("polarity graph needs a prime q");
  std::vector<std::array<std::uint32_t, 3>> points;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) points.push_back({1, a, b});
  for (std::uint32_t b = 0; b < q; ++b) points.push_back({0, 1, b});
  points.push_back({0, 0, 1});
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < points.size(); ++u)
    for (std::uint32_t v = u + 1; v < points.size(); ++v) {
      const std::uint32_t dot =
          (points[u][0] * points[v][0] + points[u][1] * points[v][1] + points[u][2] * points[v][2]) % q;
      if (dot == 0) edges.push_back({u, v});
    }
  return edges;
}

std::vector<Edge> random_c4_free_graph(std::size_t vertices, std::uint64_t seed) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < vertices; ++u)
    for (std::uint32_t v = u + 1; v < vertices; ++v) pairs.emplace_back(u, v);
  Rng rng(seed);
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[uniform_below(rng, i)]);
  std::vector<std::vector<bool>> adj(vertices, std::vector<bool>(vertices, false));
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) {
    bool closes = false;
    for (std::size_t a = 0; a < vertices && !closes; ++a) {
      if (!adj[u][a] || a == v) continue;
      for (std::size_t b = 0; b < vertices; ++b)
        if (adj[v][b] && b != u && b != a && adj[a][b]) {
          closes = true;
          break;
        }
    }
    if (closes) continue;
    adj[u][v] = adj[v][u] = true;
    edges.push_back({u, v});
  }
  return edges;
}

PowerSavingReport power_saving_probe(const Phi& phi, std::size_t k, const std::vector<Tuple>& pool,
                                     const std::vector<std::size_t>& l_values, std::size_t d,
                                     const CountOptions& options) {
  if (l_values.size() < 3) throw std::invalid_argument("power-saving probe needs at least three l values");
  if (!std::is_sorted(l_values.begin(), l_values.end()) ||
      std::adjacent_find(l_values.begin(), l_values.end()) != l_values.end())
    throw std::invalid_argument("l values must be strictly increasing");
  if (d == 0) throw std::invalid_argument("power-saving probe needs d >= 1");
  PowerSavingReport report;
  report.l_values = l_values;
  std::map<std::size_t, std::uint64_t> points;
  for (std::size_t l : l_values) {
    const auto count = f_phi(phi, 1, k, pool, l, options);
    report.values.push_back(count.value);
    report.exact = report.exact && count.exact;
    points[l] = count.value;
  }
  BigInt dk = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) dk *= d;
  report.zarankiewicz_exponent = Rational(BigInt(k)) - Rational(BigInt(1), dk);
  report.exponent_estimate = vc::log_log_slope(points);
  report.saving_consistent =
      report.exponent_estimate && *report.exponent_estimate <= report.zarankiewicz_exponent;
  return report;
}

}  // namespace fhlab::typecount
