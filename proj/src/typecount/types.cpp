#include "fhlab/typecount/types.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "fhlab/core/random.hpp"
#include "fhlab/core/rational.hpp"

namespace fhlab::typecount {

Bits::Bits(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && size % 64 != 0) words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
}

bool Bits::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bits::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

Bits& Bits::operator&=(const Bits& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool Bits::intersects(const Bits& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

Phi::Phi(const logic::Structure& structure, const FormulaTree& formula, std::vector<std::string> x,
         std::vector<std::string> y)
    : formula_(formula, structure,
               [&] {
                 auto vars = x;
                 vars.insert(vars.end(), y.begin(), y.end());
                 return vars;
               }()),
      x_arity_(x.size()),
      y_arity_(y.size()),
      witness_space_(1) {
  for (std::size_t i = 0; i < x_arity_; ++i) {
    if (witness_space_ > kWitnessCap / structure.size())
      throw std::invalid_argument("witness space universe^|x| exceeds the cap");
    witness_space_ *= structure.size();
  }
}

Bits Phi::solutions(const Tuple& b) const {
  if (b.size() != y_arity_)
    throw std::invalid_argument("parameter tuple has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(y_arity_));
  const std::size_t n = structure().size();
  Bits out(witness_space_);
  Tuple args(x_arity_ + y_arity_);
  std::copy(b.begin(), b.end(), args.begin() + static_cast<long>(x_arity_));
  for (std::size_t w = 0; w < witness_space_; ++w) {
    std::size_t rest = w;
    for (std::size_t i = x_arity_; i-- > 0;) {
      args[i] = static_cast<Value>(rest % n);
      rest /= n;
    }
    if (formula_.holds(args)) out.set(w);
  }
  return out;
}

std::vector<PositiveType> enumerate_types(const Phi& phi, const std::vector<Tuple>& parameters,
                                          std::size_t k, std::size_t cap) {
  if (k == 0) throw std::invalid_argument("types need k >= 1");
  std::vector<Bits> sols;
  sols.reserve(parameters.size());
  for (const auto& b : parameters) sols.push_back(phi.solutions(b));
  const std::size_t top = std::min(k, parameters.size());

  // Level-wise: a consistent set's subsets are consistent, so extend level s-1.
  std::vector<PositiveType> out;
  std::vector<PositiveType> level;
  for (std::size_t i = 0; i < parameters.size(); ++i)
    if (sols[i].any()) level.push_back({{i}, sols[i]});
  for (std::size_t size = 1; size <= top && !level.empty(); ++size) {
    if (out.size() + level.size() > cap)
      throw std::length_error("type enumeration exceeded the cap of " + std::to_string(cap) +
                              " after " + std::to_string(out.size()) + " types");
    out.insert(out.end(), level.begin(), level.end());
    if (size == top) break;
    std::vector<PositiveType> next;
    for (const auto& t : level) {
      for (std::size_t j = t.instances.back() + 1; j < parameters.size(); ++j) {
        Bits w = t.witnesses;
        w &= sols[j];
        if (!w.any()) continue;
        auto inst = t.instances;
        inst.push_back(j);
        next.push_back({std::move(inst), std::move(w)});
      }
    }
    level = std::move(next);
  }
  return out;
}

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

Bits common(const std::vector<std::size_t>& instances, const std::vector<std::size_t>& pick,
            const std::vector<Bits>& solutions) {
  Bits w = solutions[instances[pick[0]]];
  for (std::size_t i = 1; i < pick.size(); ++i) w &= solutions[instances[pick[i]]];
  return w;
}

}  // namespace

bool m_inconsistent(const PositiveType& p, const PositiveType& q, std::size_t m,
                    const std::vector<Bits>& solutions) {
  if (m == 0) return false;
  const std::size_t mp = std::min(m, p.instances.size());
  const std::size_t mq = std::min(m, q.instances.size());
  // Larger subsets only shrink the common witnesses, so sizes mp, mq suffice.
  std::vector<std::size_t> a(mp);
  std::iota(a.begin(), a.end(), std::size_t{0});
  do {
    const Bits wa = common(p.instances, a, solutions);
    std::vector<std::size_t> b(mq);
    std::iota(b.begin(), b.end(), std::size_t{0});
    do {
      if (!wa.intersects(common(q.instances, b, solutions))) return true;
    } while (next_combination(b, q.instances.size()));
  } while (next_combination(a, p.instances.size()));
  return false;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const std::vector<std::vector<bool>>& adj, std::uint64_t node_cap)
      : adj_(adj), node_cap_(node_cap) {}

  CliqueResult run() {
    std::vector<std::size_t> all(adj_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    // greedy: repeatedly take the candidate with most neighbours among candidates
    {
      std::vector<std::size_t> cand = all;
      std::vector<std::size_t> clique;
      while (!cand.empty()) {
        std::size_t best = cand[0];
        std::size_t best_deg = 0;
        for (std::size_t v : cand) {
          std::size_t deg = 0;
          for (std::size_t u : cand) deg += adj_[v][u] ? 1 : 0;
          if (deg > best_deg || (deg == best_deg && v < best)) {
            best = v;
            best_deg = deg;
          }
        }
        clique.push_back(best);
        std::vector<std::size_t> next;
        for (std::size_t u : cand)
          if (u != best && adj_[best][u]) next.push_back(u);
        cand = std::move(next);
      }
      greedy_ = clique.size();
      best_ = clique;
    }
    std::vector<std::size_t> current;
    expand(current, all);
    CliqueResult result;
    result.vertices = best_;
    std::sort(result.vertices.begin(), result.vertices.end());
    result.greedy_lower = greedy_;
    result.exact = !aborted_;
    return result;
  }

 private:
  void expand(std::vector<std::size_t>& current, const std::vector<std::size_t>& candidates) {
    if (aborted_) return;
    if (++nodes_ > node_cap_) {
      aborted_ = true;
      return;
    }
    if (candidates.empty()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    // greedy colouring: colour classes are independent sets, one vertex each at most
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour_of;
    {
      std::vector<std::vector<std::size_t>> classes;
      for (std::size_t v : candidates) {
        std::size_t c = 0;
        for (; c < classes.size(); ++c) {
          const bool clash = std::any_of(classes[c].begin(), classes[c].end(),
                                         [&](std::size_t u) { return adj_[v][u]; });
          if (!clash) break;
        }
        if (c == classes.size()) classes.emplace_back();
        classes[c].push_back(v);
      }
      for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t v : classes[c]) {
          order.push_back(v);
          colour_of.push_back(c + 1);
        }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + colour_of[i] <= best_.size()) return;
      const std::size_t v = order[i];
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < i; ++j)
        if (adj_[v][order[j]]) next.push_back(order[j]);
      current.push_back(v);
      expand(current, next);
      current.pop_back();
      if (aborted_) return;
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t greedy_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

CliqueResult max_clique(const std::vector<std::vector<bool>>& adjacency, std::uint64_t node_cap) {
  for (const auto& row : adjacency)
    if (row.size() != adjacency.size()) throw std::invalid_argument("adjacency matrix is not square");
  return CliqueSearch(adjacency, node_cap).run();
}

CountReport f_phi(const Phi& phi, std::size_t m, std::size_t k, const std::vector<Tuple>& pool,
                  std::size_t l, const CountOptions& options) {
  if (l > pool.size())
    throw std::invalid_argument("l = " + std::to_string(l) + " exceeds the pool size " +
                                std::to_string(pool.size()));
  if (m == 0 || k == 0) throw std::invalid_argument("f_phi needs m, k >= 1");
  CountReport report;
  report.m = m;
  report.k = k;
  report.l = l;
  report.seed = options.seed;

  auto evaluate = [&](const std::vector<std::size_t>& subset) {
    std::vector<Tuple> params;
    std::vector<Bits> sols;
    for (std::size_t i : subset) {
      params.push_back(pool[i]);
      sols.push_back(phi.solutions(pool[i]));
    }
    const auto types = enumerate_types(phi, params, k, options.type_cap);
    std::vector<std::vector<bool>> adj(types.size(), std::vector<bool>(types.size(), false));
    for (std::size_t a = 0; a < types.size(); ++a)
      for (std::size_t b = a + 1; b < types.size(); ++b)
        adj[a][b] = adj[b][a] = m_inconsistent(types[a], types[b], m, sols);
    const auto clique = max_clique(adj, options.node_cap);
    ++report.subsets_examined;
    if (!clique.exact) report.exact = false;
    report.greedy_lower = std::max(report.greedy_lower, clique.greedy_lower);
    if (clique.vertices.size() > report.value || report.subsets_examined == 1) {
      report.value = clique.vertices.size();
      report.best_parameters = subset;
      report.witness.clear();
      for (std::size_t v : clique.vertices) report.witness.push_back(types[v]);
    }
  };

  const BigInt subsets = binomial(pool.size(), l);
  if (subsets <= options.exhaustive_limit) {
    report.mode = SearchMode::exhaustive;
    std::vector<std::size_t> comb(l);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    do {
      evaluate(comb);
    } while (l > 0 && next_combination(comb, pool.size()));
  } else {
    report.mode = SearchMode::sampled;
    report.exact = false;
    Rng rng(options.seed);
    std::vector<std::size_t> idx(pool.size());
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t i = 0; i < l; ++i) std::swap(idx[i], idx[i + uniform_below(rng, pool.size() - i)]);
      std::vector<std::size_t> subset(idx.begin(), idx.begin() + static_cast<long>(l));
      std::sort(subset.begin(), subset.end());
      evaluate(subset);
    }
  }
  return report;
}

MembershipEncoding encode_membership(const setfam::SetFamily& family) {
  const std::size_t n = family.ground_size();
  const std::size_t universe = n + family.size();
  std::vector<std::vector<Value>> tuples;
  std::vector<std::string> names;
  for (std::size_t e = 0; e < n; ++e) names.push_back("p" + std::to_string(e));
  for (std::size_t i = 0; i < family.size(); ++i) {
    names.push_back(family.has_labels() ? family.labels()[i] : "S" + std::to_string(i));
    for (setfam::Element e : family.member(i))
      tuples.push_back({static_cast<Value>(e), static_cast<Value>(n + i)});
  }
  std::map<std::string, logic::RelationTable> relations;
  relations["In"] = FiniteStructure::relation_from_tuples(universe, 2, tuples);
  MembershipEncoding out{FiniteStructure(universe, std::move(relations), {}, std::move(names)), {}};
  for (std::size_t i = 0; i < family.size(); ++i) out.pool.push_back({static_cast<Value>(n + i)});
  return out;
}

FiniteStructure equality_structure(std::size_t n) { return FiniteStructure(n, {}); }

}  // namespace fhlab::typecount
