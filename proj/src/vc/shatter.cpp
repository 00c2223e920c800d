#include "fhlab/vc/shatter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "fhlab/core/random.hpp"

namespace fhlab::vc {

namespace {

// Trace bitmask of a member on a subset of at most 63 elements.
std::uint64_t trace_mask(const SetFamily& family, std::size_t member,
                         std::span<const Element> subset) {
  std::uint64_t mask = 0;
  for (std::size_t b = 0; b < subset.size(); ++b)
    if (family.contains(member, subset[b])) mask |= (std::uint64_t{1} << b);
  return mask;
}

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

}  // namespace

bool is_shattered(const SetFamily& family, std::span<const Element> subset) {
  for (Element e : subset)
    if (e >= family.ground_size())
      throw std::invalid_argument("element " + std::to_string(e) + " outside ground set");
  if (subset.size() >= 63) return false;
  const std::uint64_t needed = std::uint64_t{1} << subset.size();
  if (family.size() < needed) return false;
  std::unordered_set<std::uint64_t> traces;
  for (std::size_t i = 0; i < family.size(); ++i) {
    traces.insert(trace_mask(family, i, subset));
    if (traces.size() == needed) return true;
  }
  return traces.size() == needed;
}

ShatterReport vc_dimension(const SetFamily& family, std::size_t cap) {
  ShatterReport report;
  report.cap = cap;
  // Shattered sets are closed under subsets, so level s+1 candidates are
  // one-element extensions of shattered s-sets.
  std::set<std::vector<Element>> level = {{}};
  std::size_t size = 0;
  while (size < cap && !level.empty()) {
    std::set<std::vector<Element>> next;
    for (const auto& base : level) {
      const Element start = base.empty() ? 0 : base.back() + 1;
      for (Element e = start; e < family.ground_size(); ++e) {
        auto candidate = base;
        candidate.push_back(e);
        if (is_shattered(family, candidate)) next.insert(std::move(candidate));
      }
    }
    if (next.empty()) break;
    level = std::move(next);
    ++size;
  }
  report.vc_lower = size;
  report.witness = level.empty() ? std::vector<Element>{} : *level.begin();
  const bool hit_cap = size == cap;
  const bool provably_maximal =
      size >= family.ground_size() || (size < 63 && (std::uint64_t{2} << size) > family.size());
  if (!hit_cap || provably_maximal) report.vc_exact = size;
  return report;
}

std::uint64_t venn_atoms(const SetFamily& family, std::span<const std::size_t> members) {
  std::vector<std::vector<std::uint32_t>> pattern(family.ground_size());
  for (std::uint32_t pos = 0; pos < members.size(); ++pos)
    for (Element e : family.member(members[pos])) pattern[e].push_back(pos);
  std::set<std::vector<std::uint32_t>> atoms(pattern.begin(), pattern.end());
  return atoms.size();
}

DualShatter dual_shatter(const SetFamily& family, std::span<const std::size_t> sizes,
                         const DualShatterOptions& options) {
  DualShatter result;
  result.seed = options.seed;
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const std::size_t total = family.size();

  Rng rng(options.seed);
  std::vector<std::size_t> previous_witness;
  for (std::size_t n : sorted) {
    if (n > total)
      throw std::invalid_argument("dual_shatter size " + std::to_string(n) +
                                  " exceeds family size " + std::to_string(total));
    std::uint64_t best = n == 0 ? venn_atoms(family, {}) : 0;
    std::vector<std::size_t> best_witness;
    const BigInt count = binomial(total, n);
    if (count <= options.exhaustive_limit) {
      result.modes[n] = DualMode::exhaustive;
      std::vector<std::size_t> comb(n);
      std::iota(comb.begin(), comb.end(), std::size_t{0});
      do {
        const auto atoms = venn_atoms(family, comb);
        if (atoms > best) {
          best = atoms;
          best_witness = comb;
        }
      } while (n > 0 && next_combination(comb, total));
    } else {
      result.modes[n] = DualMode::sampled;
      std::vector<std::size_t> pool(total);
      for (std::uint64_t s = 0; s < options.samples; ++s) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i)
          std::swap(pool[i], pool[i + uniform_below(rng, total - i)]);
        std::vector<std::size_t> pick(pool.begin(), pool.begin() + static_cast<long>(n));
        std::sort(pick.begin(), pick.end());
        const auto atoms = venn_atoms(family, pick);
        if (atoms > best) {
          best = atoms;
          best_witness = pick;
        }
      }
      // Greedy extension of the previous witness.
      std::vector<std::size_t> grown = previous_witness;
      while (grown.size() < n) {
        std::size_t choice = total;
        std::uint64_t choice_atoms = 0;
        for (std::size_t i = 0; i < total; ++i) {
          if (std::find(grown.begin(), grown.end(), i) != grown.end()) continue;
          grown.push_back(i);
          const auto atoms = venn_atoms(family, grown);
          grown.pop_back();
          if (choice == total || atoms > choice_atoms) {
            choice = i;
            choice_atoms = atoms;
          }
        }
        grown.push_back(choice);
      }
      std::sort(grown.begin(), grown.end());
      const auto grown_atoms = venn_atoms(family, grown);
      if (grown_atoms > best) {
        best = grown_atoms;
        best_witness = grown;
      }
    }
    result.values[n] = best;
    result.witnesses[n] = best_witness;
    previous_witness = best_witness;
  }
  return result;
}

std::optional<Rational> log_log_slope(const std::map<std::size_t, std::uint64_t>& values) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, v] : values) {
    if (n < 2 || v == 0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(v)));
  }
  if (xs.size() < 2) return std::nullopt;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  const double slope = sxy / sxx;
  return Rational(BigInt(static_cast<std::int64_t>(std::llround(slope * 1000.0))), BigInt(1000));
}

}  // namespace fhlab::vc
