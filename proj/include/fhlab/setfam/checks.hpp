#pragma once

// Instance-level fractional Helly checks on finite set families.
//
// "Consistent" always means the member sets share a ground element. Every
// fraction is an exact rational; no verdict depends on floating point.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::setfam {

struct ConsReport {
  std::size_t k = 0;
  std::uint64_t cons_count = 0;  // k-element index subsets with a common element
  BigInt total;                  // C(n, k)
  Rational fraction;
};

struct MaxIntersecting {
  std::size_t size = 0;
  Element element = 0;               // smallest maximiser
  std::vector<std::size_t> indices;  // every member containing `element`
};

struct FhpReport {
  std::size_t k = 0;
  Rational alpha;
  ConsReport cons;
  Rational best_beta;
  Element witness_element = 0;
  std::vector<std::size_t> witness_indices;
  bool hypothesis_holds = false;
  std::vector<std::size_t> empty_members;
};

enum class Repetition { allowed, distinct };

struct PkResult {
  bool holds = true;
  std::optional<std::vector<std::size_t>> counterexample;  // lexicographically first
  std::uint64_t tuples_checked = 0;
};

struct ColorfulReport {
  std::uint64_t rainbow_consistent = 0;
  BigInt rainbow_total;
  Rational fraction;
  Rational alpha;
  bool hypothesis_holds = false;
  std::vector<Rational> best_beta;  // per family
  Rational max_best_beta;
  std::size_t best_family = 0;
  Rational reference_beta;  // alpha / (d + 1), the convex colorful constant
};

/// Finitely supported probability measure on member indices with exact weights.
class RationalWeights {
 public:
  RationalWeights() = default;
  /// Throws std::invalid_argument on negative weights or a total other than 1.
  explicit RationalWeights(std::map<std::size_t, Rational> weights);

  static RationalWeights uniform(std::size_t n);

  [[nodiscard]] const std::map<std::size_t, Rational>& weights() const { return weights_; }
  [[nodiscard]] Rational weight(std::size_t index) const;
  /// Least common denominator of the weights.
  [[nodiscard]] BigInt common_denominator() const;

 private:
  std::map<std::size_t, Rational> weights_;
};

struct MeasureReport {
  std::size_t d = 0;
  Rational alpha;
  Rational consistent_mass;  // mu^{(x)d} of consistent ordered d-tuples
  Rational max_depth_mass;   // max_a mu({i : a in S_i})
  Element witness_element = 0;
  bool hypothesis_holds = false;
};

ConsReport cons_k(const SetFamily& family, std::size_t k);

MaxIntersecting max_intersecting(const SetFamily& family);

FhpReport check_fhp_instance(const SetFamily& family, std::size_t k, const Rational& alpha);

/// Checks that every p-tuple of members (non-decreasing index tuples when
/// repetition is allowed) contains k positions whose sets share an element.
PkResult check_pk_property(const SetFamily& family, std::size_t p, std::size_t k,
                           Repetition repetition = Repetition::allowed);

/// Largest intersecting sub-multiset of the indexed sequence over its length.
Rational sequence_ratio(const SetFamily& family, std::span<const std::size_t> sequence);

/// Families must share a ground set.
ColorfulReport colorful_check(std::span<const SetFamily> families, const Rational& alpha);

MeasureReport measure_fhp_check(const SetFamily& family, const RationalWeights& weights,
                                std::size_t d, const Rational& alpha);

/// Lower bound C(n,p)/C(n-k,p-k) on |Cons_k| for any n-member tuple with the
/// (p,k)-property.
Rational wfhp_counting_bound(std::size_t n, std::size_t p, std::size_t k);

/// Replicates member i exactly weight_i * D times (D the common denominator),
/// in index order. Returns the replicated family; D is its size.
SetFamily expand_by_weights(const SetFamily& family, const RationalWeights& weights);

/// Upper bound C(d,2) D^(d-1) on ordered d-tuples over [D] with a repeated index.
BigInt diagonal_correction_bound(std::size_t d, std::uint64_t D);

}  // namespace fhlab::setfam
