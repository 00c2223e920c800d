#include <doctest.h>

#include "../oracles/oracles.hpp"
#include "fhlab/vc/shatter.hpp"
#include "helpers.hpp"

using namespace fhlab;
using namespace fhlab::vc;
using fhlab::test::fam;
using fhlab::test::triangle;

namespace {

setfam::SetFamily powerset(std::size_t g) {
  std::vector<std::vector<Element>> sets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
    std::vector<Element> s;
    for (std::size_t e = 0; e < g; ++e)
      if ((mask >> e) & 1U) s.push_back(static_cast<Element>(e));
    sets.push_back(s);
  }
  return fam(g, sets);
}

}  // namespace

TEST_CASE("is_shattered examples") {
  const std::vector<Element> none;
  CHECK(is_shattered(triangle(), none));
  const std::vector<Element> pair{0, 1};
  CHECK_FALSE(is_shattered(triangle(), pair));
  const std::vector<Element> one{0};
  CHECK(is_shattered(triangle(), one));
  CHECK_FALSE(is_shattered(fam(2, {{0}, {0, 1}}), one));
  CHECK(is_shattered(fam(3, {{0, 1}, {2}}), one));
  CHECK(is_shattered(powerset(3), pair));
}

TEST_CASE("vc_dimension of powersets and half-intervals") {
  for (std::size_t g = 0; g <= 5; ++g) {
    const auto r = vc_dimension(powerset(g), 12);
    CHECK(r.vc_lower == g);
    REQUIRE(r.vc_exact);
    CHECK(*r.vc_exact == g);
    CHECK(r.witness.size() == g);
    CHECK(is_shattered(powerset(g), r.witness));
  }
  std::vector<std::vector<Element>> halves;
  for (std::size_t t = 0; t <= 8; ++t) {
    std::vector<Element> s;
    for (std::size_t e = 0; e < t; ++e) s.push_back(static_cast<Element>(e));
    halves.push_back(s);
  }
  CHECK(*vc_dimension(fam(8, halves), 12).vc_exact == 1);
  const auto capped = vc_dimension(powerset(5), 3);
  CHECK(capped.vc_lower == 3);
  CHECK_FALSE(capped.vc_exact);
}

TEST_CASE("families of small sets have small VC dimension") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + uniform_below(rng, 3);
    const auto f = oracle::random_bounded_family(rng, 3 + uniform_below(rng, 12), 8, d);
    const auto r = vc_dimension(f, 12);
    REQUIRE(r.vc_exact);
    CHECK(*r.vc_exact <= d);
    CHECK(*r.vc_exact == oracle::vc_dimension(f));
  }
}

TEST_CASE("vc_dimension agrees with brute force") {
  Rng rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const auto f = oracle::random_family(rng, 1 + uniform_below(rng, 14), 1 + uniform_below(rng, 9));
    const auto r = vc_dimension(f, 12);
    REQUIRE(r.vc_exact);
    CHECK(*r.vc_exact == oracle::vc_dimension(f));
    CHECK(is_shattered(f, r.witness));
  }
}

TEST_CASE("shattering is closed under subsets") {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = oracle::random_family(rng, 10, 6);
    oracle::for_each_subset(6, 3, [&](const std::vector<std::size_t>& idx) {
      const std::vector<Element> s(idx.begin(), idx.end());
      if (!is_shattered(f, s)) return;
      for (std::size_t drop = 0; drop < 3; ++drop) {
        std::vector<Element> sub;
        for (std::size_t j = 0; j < 3; ++j)
          if (j != drop) sub.push_back(s[j]);
        CHECK(is_shattered(f, sub));
      }
    });
  }
}

TEST_CASE("venn atoms and dual shatter against brute force") {
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(venn_atoms(triangle(), all) == oracle::venn_regions(triangle(), all));
  CHECK(venn_atoms(triangle(), all) == 3);
  CHECK(venn_atoms(fam(4, {{0, 1}, {1, 2}, {0, 2}}), all) == 4);
  Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = oracle::random_family(rng, 2 + uniform_below(rng, 7), 1 + uniform_below(rng, 10));
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= std::min<std::size_t>(f.size(), 4); ++n) sizes.push_back(n);
    const auto dual = dual_shatter(f, sizes);
    std::uint64_t previous = 0;
    for (auto n : sizes) {
      CHECK(dual.modes.at(n) == DualMode::exhaustive);
      CHECK(dual.values.at(n) == oracle::pi_star(f, n));
      CHECK(venn_atoms(f, dual.witnesses.at(n)) == dual.values.at(n));
      CHECK(dual.values.at(n) >= previous);
      CHECK(dual.values.at(n) <= (std::uint64_t{1} << n));
      previous = dual.values.at(n);
    }
  }
}

TEST_CASE("sampled dual shatter stays non-decreasing and below the truth") {
  Rng rng(35);
  const auto f = oracle::random_family(rng, 40, 12);
  const std::vector<std::size_t> sizes{1, 2, 3, 4, 5};
  DualShatterOptions options;
  options.exhaustive_limit = 10;
  options.samples = 200;
  options.seed = 7;
  const auto a = dual_shatter(f, sizes, options);
  const auto b = dual_shatter(f, sizes, options);
  CHECK(a.values == b.values);
  std::uint64_t previous = 0;
  for (auto n : sizes) {
    CHECK(a.values.at(n) >= previous);
    CHECK(a.values.at(n) == venn_atoms(f, a.witnesses.at(n)));
    previous = a.values.at(n);
  }
  CHECK(a.modes.at(3) == DualMode::sampled);
}

TEST_CASE("log_log_slope") {
  CHECK(*log_log_slope({{2, 4}, {4, 16}, {8, 64}}) == 2);
  CHECK(*log_log_slope({{1, 2}, {2, 2}, {4, 2}}) == 0);
  CHECK_FALSE(log_log_slope({{2, 4}}));
}
