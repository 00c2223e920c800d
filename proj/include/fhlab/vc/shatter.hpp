#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::vc {

using setfam::Element;
using setfam::SetFamily;

enum class DualMode { exhaustive, sampled };

struct DualShatter {
  std::map<std::size_t, std::uint64_t> values;  // n -> pi*(n)
  std::map<std::size_t, DualMode> modes;
  std::map<std::size_t, std::vector<std::size_t>> witnesses;  // best subfamily per n
  std::uint64_t seed = 0;
};

struct ShatterReport {
  std::size_t vc_lower = 0;
  std::optional<std::size_t> vc_exact;  // set iff the search completed under the cap
  std::size_t cap = 0;
  std::vector<Element> witness;  // a shattered ground subset of size vc_lower
  DualShatter dual;
  std::optional<Rational> density_fit;  // log-log slope estimate of pi*(n)
};

/// True iff every subset of `subset` is the trace of some member.
bool is_shattered(const SetFamily& family, std::span<const Element> subset);

/// Exact VC dimension when it is <= cap, otherwise a lower bound of cap.
ShatterReport vc_dimension(const SetFamily& family, std::size_t cap);

/// Number of non-empty Venn atoms the given members cut on the ground set
/// (the region outside all of them included when non-empty).
std::uint64_t venn_atoms(const SetFamily& family, std::span<const std::size_t> members);

struct DualShatterOptions {
  std::uint64_t exhaustive_limit = 20000;  // max subfamilies enumerated per n
  std::uint64_t samples = 2000;
  std::uint64_t seed = 0;
};

/// pi*(n) for each requested n: exhaustive when C(|F|, n) is within the limit,
/// otherwise the best of seeded random samples and the greedy extension of the
/// best smaller witness (which keeps the values non-decreasing in n).
DualShatter dual_shatter(const SetFamily& family, std::span<const std::size_t> sizes,
                         const DualShatterOptions& options = {});

/// Least-squares slope of log pi*(n) against log n, snapped to a rational
/// with denominator <= 1000. Needs at least two sizes with n >= 2.
std::optional<Rational> log_log_slope(const std::map<std::size_t, std::uint64_t>& values);

}  // namespace fhlab::vc
