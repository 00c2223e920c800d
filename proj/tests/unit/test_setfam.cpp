#include <doctest.h>

#include "../oracles/oracles.hpp"
#include "fhlab/constructs/constructs.hpp"
#include "fhlab/setfam/checks.hpp"
#include "helpers.hpp"

using namespace fhlab;
using namespace fhlab::setfam;
using fhlab::test::fam;
using fhlab::test::q;
using fhlab::test::triangle;

TEST_CASE("family validation names the offending set and element") {
  CHECK_THROWS_WITH(fam(3, {{0, 1}, {5}}),
                    "set 1 contains element 5 outside ground set of size 3");
  const auto f = fam(4, {{3, 1, 1}, {}});
  CHECK(f.member(0).size() == 2);
  CHECK(f.empty_members() == std::vector<std::size_t>{1});
}

TEST_CASE("cons_k examples") {
  const auto c2 = cons_k(triangle(), 2);
  CHECK(c2.cons_count == 3);
  CHECK(c2.fraction == 1);
  CHECK(cons_k(triangle(), 3).cons_count == 0);
  CHECK(cons_k(fam(1, {{0}, {0}}), 2).cons_count == 1);
  CHECK_THROWS_AS(cons_k(triangle(), 4), std::invalid_argument);
}

TEST_CASE("max_intersecting examples") {
  const auto m = max_intersecting(triangle());
  CHECK(m.size == 2);
  CHECK(m.element == 0);
  CHECK(m.indices == std::vector<std::size_t>{0, 2});
  CHECK(max_intersecting(fam(3, {{0}, {1}, {2}})).size == 1);
  CHECK(max_intersecting(constructs::build_tp2_grid(2, 3)).size == 2);
}

TEST_CASE("check_fhp_instance examples") {
  const auto r = check_fhp_instance(triangle(), 2, q(1, 2));
  CHECK(r.hypothesis_holds);
  CHECK(r.best_beta == q(2, 3));
  const auto cross = check_fhp_instance(constructs::build_two_order_cross(6), 2, 1);
  CHECK(cross.hypothesis_holds);
  CHECK(cross.best_beta == q(2, 6));
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto f = oracle::random_family(rng, 6, 6, 1, 3);
    CHECK(check_fhp_instance(f, 2, 0).hypothesis_holds);
  }
}

TEST_CASE("check_pk_property examples") {
  CHECK(check_pk_property(constructs::build_shattered_pairs(5), 4, 2).holds);
  const auto r = check_pk_property(fam(2, {{0}, {1}}), 2, 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(*r.counterexample == std::vector<std::size_t>{0, 1});
  constructs::BlockParams params;
  params.m = 4;
  params.p_prime = 4;
  const auto block = constructs::build_block_counterexample(params);
  const std::vector<std::size_t> first_block{0, 1, 2, 3};
  CHECK_FALSE(check_pk_property(block.subfamily(first_block), 4, 2, Repetition::distinct).holds);
  CHECK_THROWS_AS(check_pk_property(triangle(), 1, 2), std::invalid_argument);
}

TEST_CASE("sequence_ratio examples") {
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(sequence_ratio(triangle(), all) == q(2, 3));
  const std::vector<std::size_t> same{0, 0, 0, 0, 0};
  CHECK(sequence_ratio(fam(1, {{0}}), same) == 1);
  const std::vector<std::size_t> seq{0, 0, 1};
  CHECK(sequence_ratio(fam(2, {{0}, {1}}), seq) == q(2, 3));
}

TEST_CASE("colorful_check") {
  const std::vector<SetFamily> tt{triangle(), triangle()};
  const auto r = colorful_check(tt, q(1, 2));
  // every ordered pair of triangle edges meets, the diagonal included
  CHECK(r.rainbow_consistent == 9);
  CHECK(r.fraction == 1);
  CHECK(r.hypothesis_holds);
  CHECK(r.max_best_beta == q(2, 3));
  CHECK(r.reference_beta == q(1, 6));
  const std::vector<SetFamily> one{fam(3, {{0}, {0, 1}, {2}})};
  const auto single = colorful_check(one, q(1, 2));
  CHECK(single.fraction == 1);
  CHECK(single.max_best_beta == check_fhp_instance(one[0], 1, q(1, 2)).best_beta);
}

TEST_CASE("measure_fhp_check examples") {
  const auto t = measure_fhp_check(triangle(), RationalWeights::uniform(3), 2, q(1, 2));
  CHECK(t.consistent_mass == 1);
  CHECK(t.max_depth_mass == q(2, 3));
  using Weights = std::map<std::size_t, Rational>;
  const auto point = measure_fhp_check(fam(3, {{0, 1}, {2}}), RationalWeights(Weights{{0, 1}}), 3, 1);
  CHECK(point.consistent_mass == 1);
  CHECK(point.max_depth_mass == 1);
  const auto split = measure_fhp_check(fam(2, {{0}, {1}}), RationalWeights::uniform(2), 2, q(1, 2));
  CHECK(split.consistent_mass == q(1, 2));
  CHECK(split.max_depth_mass == q(1, 2));
  CHECK_THROWS_AS(RationalWeights(Weights{{0, q(1, 2)}}), std::invalid_argument);
}

TEST_CASE("wfhp_counting_bound examples") {
  CHECK(wfhp_counting_bound(12, 4, 2) == 11);
  CHECK(wfhp_counting_bound(7, 3, 3) == 35);
}

TEST_CASE("cons_k and max_intersecting agree with brute force") {
  Rng rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 9);
    const auto f = oracle::random_family(rng, n, 1 + uniform_below(rng, 10), 1, 2);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 4); ++k)
      CHECK(cons_k(f, k).cons_count == oracle::cons_count(f, k));
    CHECK(max_intersecting(f).size == oracle::max_depth(f));
  }
}

TEST_CASE("cons_k monotonicity across levels") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + uniform_below(rng, 6);
    const auto f = oracle::random_family(rng, n, 6, 2, 3);
    for (std::size_t k = 1; k <= 4; ++k) {
      for (std::size_t k2 = k; k2 <= std::min<std::size_t>(n, 5); ++k2) {
        const BigInt lhs = BigInt(cons_k(f, k).cons_count) * binomial(n - k, k2 - k);
        CHECK(lhs >= BigInt(cons_k(f, k2).cons_count));
      }
    }
  }
}

TEST_CASE("(p,k)-property agrees with brute force, counterexample included") {
  Rng rng(3);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 5);
    const auto f = oracle::random_family(rng, n, 5, 1, 3);
    const std::size_t p = 2 + uniform_below(rng, 3);
    const std::size_t k = 1 + uniform_below(rng, p);
    const auto expected = oracle::pk_violation(f, p, k);
    const auto got = check_pk_property(f, p, k);
    CHECK(got.holds == !expected.has_value());
    if (expected) {
      REQUIRE(got.counterexample);
      CHECK(*got.counterexample == *expected);
    }
  }
}

TEST_CASE("WFHP counting bound holds on families with the (p,k)-property") {
  Rng rng(4);
  int passing = 0;
  for (int trial = 0; passing < 100 && trial < 5000; ++trial) {
    const std::size_t n = 4 + uniform_below(rng, 5);
    const std::size_t p = 3 + uniform_below(rng, 2);
    const auto f = oracle::random_family(rng, n, 5, 3, 4);
    if (!check_pk_property(f, p, 2, Repetition::distinct).holds) continue;
    ++passing;
    CHECK(Rational(BigInt(cons_k(f, 2).cons_count)) >= wfhp_counting_bound(n, p, 2));
  }
  CHECK(passing == 100);
}

TEST_CASE("bounded-size families keep best_beta >= alpha/(2d)") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + uniform_below(rng, 3);
    const auto f = oracle::random_bounded_family(rng, 2 + uniform_below(rng, 10), 8, d);
    const auto alpha = cons_k(f, 2).fraction;
    const auto r = check_fhp_instance(f, 2, alpha);
    CHECK(r.hypothesis_holds);
    CHECK(r.best_beta >= alpha / Rational(BigInt(2 * d)));
  }
}

TEST_CASE("measure check matches the replicated family up to the diagonal") {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 4);
    const auto f = oracle::random_family(rng, n, 5, 1, 2);
    std::vector<std::uint64_t> raw(n);
    std::uint64_t total = 0;
    for (auto& w : raw) total += (w = uniform_below(rng, 4));
    if (total == 0) continue;
    std::map<std::size_t, Rational> weights;
    for (std::size_t i = 0; i < n; ++i)
      if (raw[i]) weights[i] = Rational(BigInt(raw[i]), BigInt(total));
    const RationalWeights w(weights);
    const auto expanded = expand_by_weights(f, w);
    const std::uint64_t D = expanded.size();
    CHECK(BigInt(D) == w.common_denominator());
    for (std::size_t d = 1; d <= std::min<std::uint64_t>(3, D); ++d) {
      const auto m = measure_fhp_check(f, w, d, q(1, 2));
      BigInt dd = 1;
      for (std::size_t i = 0; i < d; ++i) dd *= D;
      BigInt fact = 1;
      for (std::size_t i = 2; i <= d; ++i) fact *= i;
      const Rational scaled = m.consistent_mass * Rational(dd);
      const Rational distinct = Rational(fact * BigInt(cons_k(expanded, d).cons_count));
      CHECK(scaled >= distinct);
      CHECK(scaled - distinct <= Rational(diagonal_correction_bound(d, D)));
      CHECK(m.max_depth_mass == check_fhp_instance(expanded, d, q(1, 2)).best_beta);
    }
  }
}
