#pragma once

// Deterministic generators for the explicit finite constructions, and
// rainbow extraction from uniform families.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::constructs {

using setfam::Element;
using setfam::SetFamily;

/// Ground-set sizes above this are refused unless the caller raises the cap.
inline constexpr std::size_t kDefaultGroundCap = 1u << 20;

/// Thrown when parameters violate a construction's preconditions.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BlockParams {
  std::size_t k = 2;
  Rational alpha = make_rational(1, 2);
  Rational gamma = 1;
  std::size_t p_prime = 2;
  std::size_t k_prime = 2;
  std::size_t r = 3;  // number of blocks
  std::size_t m = 2;  // block size
};

/// prod_{j<k} (1 - j/r).
Rational block_product(std::size_t k, std::size_t r);

/// Members S_i = {E : i in E} over the k-subsets E of [r*m] meeting each block at
/// most once. Member i lies in block i / m.
SetFamily build_block_counterexample(const BlockParams& params,
                                     std::size_t ground_cap = kDefaultGroundCap);

/// Rows i < k, columns j < m. A point picks, for every row, a set of
/// inconsistency-1 columns; S_{i,j} holds the points whose row-i choice contains
/// j. Any `inconsistency` members of one row are disjoint, every row transversal
/// meets. With inconsistency 2 the points are the functions [k] -> [m].
/// Member (i, j) has index i*m + j.
SetFamily build_tp2_grid(std::size_t k, std::size_t m, std::size_t inconsistency = 2,
                         std::size_t ground_cap = kDefaultGroundCap);

/// Ground [n]x[n] (point (i,j) is i*n + j); V_t = {(i,j) : i = t or j = t}.
SetFamily build_two_order_cross(std::size_t n);

/// Non-empty strings over [W] of length <= D, ordered by length then
/// lexicographically; these are the ground elements of the caps family.
std::vector<std::string> caps_atoms(std::size_t branching, std::size_t depth,
                                    std::size_t ground_cap = kDefaultGroundCap);

/// The set {s : |s| > i, s(i) = j} over caps_atoms(W, D); empty when i >= D.
std::vector<Element> caps_member(std::size_t branching, std::size_t depth, std::size_t row,
                                 std::size_t column);

/// Members F_{i,j}, i < D, j < W, at index i*W + j.
SetFamily build_caps_family(std::size_t branching, std::size_t depth,
                            std::size_t ground_cap = kDefaultGroundCap);

/// Ground = subsets e of [m] (bitmask order); one member {e : a in e, b not in e}
/// per ordered pair a != b, in lexicographic order of (a, b).
SetFamily build_shattered_pairs(std::size_t m, std::size_t ground_cap = kDefaultGroundCap);

/// k!/k^k.
Rational furedi_gamma(std::size_t k);

struct RainbowExtraction {
  std::vector<std::vector<Element>> parts;  // k pairwise disjoint colour classes
  std::vector<std::size_t> indices;         // members meeting every class once
  std::uint64_t trial = 0;                  // zero-based trial that succeeded
  std::uint64_t seed = 0;
};

/// Repeats seeded uniform k-colourings of the ground set and returns the first
/// whose rainbow subfamily reaches floor(k!/k^k * |F|). Members must all have
/// exactly k elements (repetitions allowed).
std::optional<RainbowExtraction> furedi_extract(const SetFamily& family, std::uint64_t trials,
                                                std::uint64_t seed);

}  // namespace fhlab::constructs
