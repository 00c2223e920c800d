#pragma once

#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/setfam/set_family.hpp"

namespace fhlab::test {

inline setfam::SetFamily fam(std::size_t ground, std::vector<std::vector<setfam::Element>> sets) {
  return setfam::SetFamily(ground, std::move(sets));
}

inline setfam::SetFamily triangle() { return fam(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Rational q(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

}  // namespace fhlab::test
