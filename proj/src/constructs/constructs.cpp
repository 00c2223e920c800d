#include "fhlab/constructs/constructs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "fhlab/core/random.hpp"

namespace fhlab::constructs {

namespace {

void check_cap(const BigInt& size, std::size_t cap, const std::string& what) {
  if (size > cap) {
    throw ConstructionError(what + " needs a ground set of size " + size.str() +
                            ", above the cap " + std::to_string(cap));
  }
}

BigInt power(std::size_t base, std::size_t exp) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

Rational block_product(std::size_t k, std::size_t r) {
  Rational product = 1;
  for (std::size_t j = 0; j < k; ++j)
    product *= Rational(BigInt(r - j), BigInt(r));
  return product;
}

SetFamily build_block_counterexample(const BlockParams& params, std::size_t ground_cap) {
  const auto& [k, alpha, gamma, p_prime, k_prime, r, m] = params;
  if (k < 2) throw ConstructionError("block construction needs k >= 2");
  if (!(alpha > 0 && alpha < 1)) throw ConstructionError("alpha must lie in (0,1)");
  if (!(gamma > 0 && gamma <= 1)) throw ConstructionError("gamma must lie in (0,1]");
  if (k_prime < 2 || p_prime < k_prime) throw ConstructionError("need p' >= k' >= 2");
  if (r < k) throw ConstructionError("need r >= k (r=" + std::to_string(r) + ")");
  if (!(block_product(k, r) > alpha)) {
    throw ConstructionError("violated inequality prod_{j<k}(1 - j/r) > alpha: product is " +
                            to_string(block_product(k, r)) + ", alpha is " +
                            to_string(alpha));
  }
  const Rational needed = Rational(BigInt(p_prime)) / gamma;
  if (Rational(BigInt(m)) < needed) {
    throw ConstructionError("violated inequality m >= ceil(p'/gamma): m=" + std::to_string(m) +
                            ", p'/gamma=" + to_string(needed));
  }
  check_cap(binomial(r, k) * power(m, k), ground_cap, "block construction");

  const std::size_t n = r * m;
  std::vector<std::vector<Element>> members(n);
  Element next = 0;
  // Enumerate k-subsets of [n] with at most one element per block.
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == k) {
      for (std::size_t i : chosen) members[i].push_back(next);
      ++next;
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      if (!chosen.empty() && i / m == chosen.back() / m) continue;
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back("S" + std::to_string(i) + "@B" + std::to_string(i / m));
  return SetFamily(next, std::move(members), std::move(labels));
}

SetFamily build_tp2_grid(std::size_t k, std::size_t m, std::size_t inconsistency,
                         std::size_t ground_cap) {
  if (k == 0 || m == 0) throw ConstructionError("grid needs k, m >= 1");
  if (inconsistency < 2) throw ConstructionError("row inconsistency must be >= 2");
  const std::size_t choose = inconsistency - 1;
  if (choose > m) throw ConstructionError("row inconsistency exceeds m + 1");
  // Per-row choices: (inconsistency-1)-subsets of [m], in lexicographic order.
  std::vector<std::vector<std::size_t>> choices;
  {
    std::vector<std::size_t> comb(choose);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    for (;;) {
      choices.push_back(comb);
      std::size_t i = choose;
      while (i > 0 && comb[i - 1] == m - choose + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < choose; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  check_cap(power(choices.size(), k), ground_cap, "TP2 grid");

  const std::size_t c = choices.size();
  std::size_t points = 1;
  for (std::size_t i = 0; i < k; ++i) points *= c;
  std::vector<std::vector<Element>> members(k * m);
  for (std::size_t point = 0; point < points; ++point) {
    // row 0 is the most significant digit
    std::size_t rest = point;
    std::vector<std::size_t> digit(k);
    for (std::size_t i = k; i-- > 0;) {
      digit[i] = rest % c;
      rest /= c;
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j : choices[digit[i]])
        members[i * m + j].push_back(static_cast<Element>(point));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j)
      labels.push_back("S" + std::to_string(i) + "," + std::to_string(j));
  return SetFamily(points, std::move(members), std::move(labels));
}

SetFamily build_two_order_cross(std::size_t n) {
  if (n < 2) throw ConstructionError("two-order cross family needs n >= 2");
  std::vector<std::vector<Element>> members(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i == t || j == t) members[t].push_back(static_cast<Element>(i * n + j));
    }
  }
  return SetFamily(n * n, std::move(members));
}

std::vector<std::string> caps_atoms(std::size_t branching, std::size_t depth,
                                    std::size_t ground_cap) {
  if (branching == 0 || depth == 0) throw ConstructionError("caps need W, D >= 1");
  BigInt total = 0;
  for (std::size_t len = 1; len <= depth; ++len) total += power(branching, len);
  check_cap(total, ground_cap, "caps family");
  std::vector<std::string> atoms;
  std::vector<std::string> layer = {""};
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::string> next;
    for (const auto& prefix : layer)
      for (std::size_t j = 0; j < branching; ++j) next.push_back(prefix + std::to_string(j));
    atoms.insert(atoms.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return atoms;
}

std::vector<Element> caps_member(std::size_t branching, std::size_t depth, std::size_t row,
                                 std::size_t column) {
  // Strings of length len are enumerated lexicographically after all shorter
  // ones; their symbols are base-W digits of the position within the layer.
  std::vector<Element> out;
  std::size_t offset = 0;
  std::size_t layer = 1;
  for (std::size_t len = 1; len <= depth; ++len) {
    layer *= branching;
    if (len > row) {
      std::size_t weight = 1;  // W^(len - 1 - row): place value of symbol `row`
      for (std::size_t t = row + 1; t < len; ++t) weight *= branching;
      for (std::size_t pos = 0; pos < layer; ++pos)
        if ((pos / weight) % branching == column) out.push_back(static_cast<Element>(offset + pos));
    }
    offset += layer;
  }
  return out;
}

SetFamily build_caps_family(std::size_t branching, std::size_t depth, std::size_t ground_cap) {
  const auto atoms = caps_atoms(branching, depth, ground_cap);
  std::vector<std::vector<Element>> members;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < depth; ++i) {
    for (std::size_t j = 0; j < branching; ++j) {
      members.push_back(caps_member(branching, depth, i, j));
      labels.push_back("F" + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return SetFamily(atoms.size(), std::move(members), std::move(labels));
}

SetFamily build_shattered_pairs(std::size_t m, std::size_t ground_cap) {
  if (m < 2) throw ConstructionError("shattered pairs need m >= 2");
  if (m >= 32) throw ConstructionError("shattered pairs need m < 32");
  check_cap(power(2, m), ground_cap, "shattered pairs");
  const std::size_t ground = std::size_t{1} << m;
  std::vector<std::vector<Element>> members;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      std::vector<Element> set;
      for (std::size_t e = 0; e < ground; ++e)
        if (((e >> a) & 1U) && !((e >> b) & 1U)) set.push_back(static_cast<Element>(e));
      members.push_back(std::move(set));
      labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  return SetFamily(ground, std::move(members), std::move(labels));
}

Rational furedi_gamma(std::size_t k) {
  BigInt fact = 1;
  for (std::size_t i = 2; i <= k; ++i) fact *= i;
  return Rational(fact, power(k, k));
}

std::optional<RainbowExtraction> furedi_extract(const SetFamily& family, std::uint64_t trials,
                                                std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("furedi_extract needs trials >= 1");
  if (family.empty()) return std::nullopt;
  const std::size_t k = family.member(0).size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family.member(i).size() != k || k == 0) {
      throw std::invalid_argument("furedi_extract: member " + std::to_string(i) + " has " +
                                  std::to_string(family.member(i).size()) +
                                  " elements, expected " + std::to_string(k));
    }
  }
  const Rational target_exact = furedi_gamma(k) * Rational(BigInt(family.size()));
  const std::size_t target = static_cast<std::size_t>(
      (boost::multiprecision::numerator(target_exact) /
       boost::multiprecision::denominator(target_exact))
          .convert_to<std::uint64_t>());

  Rng rng(seed);
  std::vector<std::size_t> colour(family.ground_size());
  std::vector<char> seen(k);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    for (auto& c : colour) c = uniform_below(rng, k);
    std::vector<std::size_t> rainbow;
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      bool ok = true;
      for (Element e : family.member(i)) {
        if (seen[colour[e]]) {
          ok = false;
          break;
        }
        seen[colour[e]] = 1;
      }
      if (ok) rainbow.push_back(i);
    }
    if (rainbow.size() >= target) {
      RainbowExtraction out;
      out.parts.resize(k);
      for (std::size_t e = 0; e < colour.size(); ++e)
        out.parts[colour[e]].push_back(static_cast<Element>(e));
      out.indices = std::move(rainbow);
      out.trial = trial;
      out.seed = seed;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace fhlab::constructs
