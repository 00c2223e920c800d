#include "fhlab/setfam/checks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fhlab::setfam {

namespace {

struct ConsCounter {
  const SetFamily& family;
  std::size_t k;
  std::vector<std::vector<Element>> scratch;  // running intersection per level
  std::uint64_t count = 0;

  void run() {
    scratch.assign(k + 1, {});
    const std::size_t n = family.size();
    for (std::size_t i = 0; i + k <= n; ++i) {
      const auto set = family.member(i);
      if (set.empty()) continue;
      if (k == 1) {
        ++count;
        continue;
      }
      scratch[1].assign(set.begin(), set.end());
      descend(i + 1, 1);
    }
  }

  void descend(std::size_t start, std::size_t level) {
    const std::size_t n = family.size();
    const std::size_t remaining = k - level;
    for (std::size_t i = start; i + remaining <= n; ++i) {
      intersect_into(scratch[level], family.member(i), scratch[level + 1]);
      if (scratch[level + 1].empty()) continue;
      if (level + 1 == k) {
        ++count;
      } else {
        descend(i + 1, level + 1);
      }
    }
  }
};

void require_k(const SetFamily& family, std::size_t k) {
  if (k == 0 || k > family.size()) {
    throw std::invalid_argument("k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                                ", n=" + std::to_string(family.size()) + ")");
  }
}

// DFS over p-tuples (non-decreasing or strictly increasing index sequences)
// tracking multiplicity-weighted depth of every ground element.
struct PkSearch {
  const SetFamily& family;
  std::size_t p;
  std::size_t k;
  bool distinct;
  std::vector<std::size_t> depth;
  std::size_t elements_at_k = 0;
  std::vector<std::size_t> tuple;
  std::uint64_t checked = 0;

  void push(std::size_t index) {
    tuple.push_back(index);
    for (Element e : family.member(index))
      if (++depth[e] == k) ++elements_at_k;
  }
  void pop() {
    for (Element e : family.member(tuple.back()))
      if (depth[e]-- == k) --elements_at_k;
    tuple.pop_back();
  }

  // Returns true when a violating tuple was found (left in `tuple`).
  bool search(std::size_t start) {
    if (tuple.size() == p) {
      ++checked;
      return elements_at_k == 0;
    }
    const std::size_t n = family.size();
    for (std::size_t i = start; i < n; ++i) {
      if (distinct && n - i < p - tuple.size()) break;
      push(i);
      if (elements_at_k > 0) {
        // every completion already passes
        ++checked;
        pop();
        continue;
      }
      if (search(distinct ? i + 1 : i)) return true;
      pop();
    }
    return false;
  }
};

}  // namespace

ConsReport cons_k(const SetFamily& family, std::size_t k) {
  require_k(family, k);
  ConsCounter counter{family, k, {}, 0};
  counter.run();
  ConsReport report;
  report.k = k;
  report.cons_count = counter.count;
  report.total = binomial(family.size(), k);
  report.fraction = Rational(BigInt(counter.count), report.total);
  return report;
}

MaxIntersecting max_intersecting(const SetFamily& family) {
  if (family.empty()) throw std::invalid_argument("max_intersecting: empty family");
  const auto depth = depth_profile(family);
  MaxIntersecting best;
  for (std::size_t e = 0; e < depth.size(); ++e) {
    if (depth[e] > best.size) {
      best.size = depth[e];
      best.element = static_cast<Element>(e);
    }
  }
  if (best.size > 0) {
    for (std::size_t i = 0; i < family.size(); ++i)
      if (family.contains(i, best.element)) best.indices.push_back(i);
  }
  return best;
}

FhpReport check_fhp_instance(const SetFamily& family, std::size_t k, const Rational& alpha) {
  FhpReport report;
  report.k = k;
  report.alpha = alpha;
  report.cons = cons_k(family, k);
  const auto best = max_intersecting(family);
  report.best_beta = Rational(BigInt(best.size), BigInt(family.size()));
  report.witness_element = best.element;
  report.witness_indices = best.indices;
  report.hypothesis_holds = report.cons.fraction >= alpha;
  report.empty_members = family.empty_members();
  return report;
}

PkResult check_pk_property(const SetFamily& family, std::size_t p, std::size_t k,
                           Repetition repetition) {
  if (k == 0 || p < k) {
    throw std::invalid_argument("(p,k)-property needs p >= k >= 1 (p=" + std::to_string(p) +
                                ", k=" + std::to_string(k) + ")");
  }
  const bool distinct = repetition == Repetition::distinct;
  if (distinct && p > family.size()) {
    throw std::invalid_argument("p exceeds the number of members for distinct tuples");
  }
  PkSearch search{family, p, k, distinct, std::vector<std::size_t>(family.ground_size(), 0),
                  0, {}, 0};
  PkResult result;
  if (!family.empty() && search.search(0)) {
    result.holds = false;
    result.counterexample = search.tuple;
  }
  result.tuples_checked = search.checked;
  return result;
}

Rational sequence_ratio(const SetFamily& family, std::span<const std::size_t> sequence) {
  if (sequence.empty()) throw std::invalid_argument("sequence_ratio: empty sequence");
  std::vector<std::size_t> depth(family.ground_size(), 0);
  std::size_t best = 0;
  for (std::size_t index : sequence) {
    if (index >= family.size())
      throw std::out_of_range("sequence index " + std::to_string(index) + " out of range");
    for (Element e : family.member(index)) best = std::max(best, ++depth[e]);
  }
  return Rational(BigInt(best), BigInt(sequence.size()));
}

ColorfulReport colorful_check(std::span<const SetFamily> families, const Rational& alpha) {
  if (families.empty()) throw std::invalid_argument("colorful_check: no families");
  const std::size_t ground = families.front().ground_size();
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (families[i].ground_size() != ground)
      throw std::invalid_argument("colorful_check: family " + std::to_string(i) +
                                  " has a different ground set");
    if (families[i].empty())
      throw std::invalid_argument("colorful_check: family " + std::to_string(i) + " is empty");
  }
  const std::size_t d = families.size();

  ColorfulReport report;
  report.alpha = alpha;
  report.rainbow_total = 1;
  for (const auto& f : families) report.rainbow_total *= f.size();

  std::vector<std::vector<Element>> scratch(d + 1);
  std::uint64_t count = 0;
  auto descend = [&](auto&& self, std::size_t level) -> void {
    for (std::size_t i = 0; i < families[level].size(); ++i) {
      const auto set = families[level].member(i);
      if (level == 0) {
        scratch[1].assign(set.begin(), set.end());
      } else {
        intersect_into(scratch[level], set, scratch[level + 1]);
      }
      if (scratch[level + 1].empty()) continue;
      if (level + 1 == d) {
        ++count;
      } else {
        self(self, level + 1);
      }
    }
  };
  descend(descend, 0);

  report.rainbow_consistent = count;
  report.fraction = Rational(BigInt(count), report.rainbow_total);
  report.hypothesis_holds = report.fraction >= alpha;
  for (std::size_t i = 0; i < d; ++i) {
    const auto best = max_intersecting(families[i]);
    report.best_beta.push_back(Rational(BigInt(best.size), BigInt(families[i].size())));
    if (report.best_beta.back() > report.max_best_beta) {
      report.max_best_beta = report.best_beta.back();
      report.best_family = i;
    }
  }
  report.reference_beta = alpha / Rational(BigInt(d + 1));
  return report;
}

RationalWeights::RationalWeights(std::map<std::size_t, Rational> weights) {
  Rational total = 0;
  for (auto& [index, w] : weights) {
    if (w < 0)
      throw std::invalid_argument("negative weight at index " + std::to_string(index));
    total += w;
    if (w != 0) weights_.emplace(index, w);
  }
  if (total != 1)
    throw std::invalid_argument("weights sum to " + to_string(total) + ", expected 1");
}

RationalWeights RationalWeights::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform weights over zero members");
  std::map<std::size_t, Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace(i, Rational(BigInt(1), BigInt(n)));
  return RationalWeights(std::move(w));
}

Rational RationalWeights::weight(std::size_t index) const {
  auto it = weights_.find(index);
  return it == weights_.end() ? Rational(0) : it->second;
}

BigInt RationalWeights::common_denominator() const {
  BigInt lcm = 1;
  for (const auto& [index, w] : weights_) {
    const BigInt den = boost::multiprecision::denominator(w);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  return lcm;
}

MeasureReport measure_fhp_check(const SetFamily& family, const RationalWeights& weights,
                                std::size_t d, const Rational& alpha) {
  if (d == 0) throw std::invalid_argument("measure_fhp_check: d must be >= 1");
  std::vector<std::size_t> support;
  std::vector<Rational> mass;
  for (const auto& [index, w] : weights.weights()) {
    if (index >= family.size())
      throw std::invalid_argument("weight on index " + std::to_string(index) +
                                  " outside family of size " + std::to_string(family.size()));
    support.push_back(index);
    mass.push_back(w);
  }

  MeasureReport report;
  report.d = d;
  report.alpha = alpha;

  std::vector<std::vector<Element>> scratch(d + 1);
  std::vector<Rational> product(d + 1);
  product[0] = 1;
  Rational consistent = 0;
  auto descend = [&](auto&& self, std::size_t level) -> void {
    for (std::size_t s = 0; s < support.size(); ++s) {
      const auto set = family.member(support[s]);
      if (level == 0) {
        scratch[1].assign(set.begin(), set.end());
      } else {
        intersect_into(scratch[level], set, scratch[level + 1]);
      }
      if (scratch[level + 1].empty()) continue;
      product[level + 1] = product[level] * mass[s];
      if (level + 1 == d) {
        consistent += product[level + 1];
      } else {
        self(self, level + 1);
      }
    }
  };
  descend(descend, 0);
  report.consistent_mass = consistent;

  std::vector<Rational> depth(family.ground_size());
  for (std::size_t s = 0; s < support.size(); ++s)
    for (Element e : family.member(support[s])) depth[e] += mass[s];
  for (std::size_t e = 0; e < depth.size(); ++e) {
    if (depth[e] > report.max_depth_mass) {
      report.max_depth_mass = depth[e];
      report.witness_element = static_cast<Element>(e);
    }
  }
  report.hypothesis_holds = report.consistent_mass >= alpha;
  return report;
}

Rational wfhp_counting_bound(std::size_t n, std::size_t p, std::size_t k) {
  if (k == 0 || p < k || n < p) {
    throw std::invalid_argument("wfhp_counting_bound needs n >= p >= k >= 1");
  }
  return Rational(binomial(n, p), binomial(n - k, p - k));
}

SetFamily expand_by_weights(const SetFamily& family, const RationalWeights& weights) {
  const BigInt D = weights.common_denominator();
  std::vector<std::vector<Element>> sets;
  for (const auto& [index, w] : weights.weights()) {
    if (index >= family.size())
      throw std::invalid_argument("weight on index " + std::to_string(index) + " out of range");
    const Rational copies = w * Rational(D);
    const auto count = boost::multiprecision::numerator(copies).convert_to<std::uint64_t>();
    const auto member = family.member(index);
    for (std::uint64_t c = 0; c < count; ++c) sets.emplace_back(member.begin(), member.end());
  }
  return SetFamily(family.ground_size(), std::move(sets));
}

BigInt diagonal_correction_bound(std::size_t d, std::uint64_t D) {
  BigInt power = 1;
  for (std::size_t i = 1; i < d; ++i) power *= D;
  return binomial(d, 2) * power;
}

}  // namespace fhlab::setfam
