#include <doctest.h>

#include <functional>
#include <set>

#include "../oracles/oracles.hpp"
#include "fhlab/constructs/constructs.hpp"
#include "fhlab/setfam/checks.hpp"
#include "helpers.hpp"

using namespace fhlab;
using namespace fhlab::constructs;
using fhlab::test::fam;
using fhlab::test::q;

namespace {

BlockParams block(std::size_t k, std::size_t r, std::size_t m, std::size_t p_prime) {
  BlockParams p;
  p.k = k;
  p.r = r;
  p.m = m;
  p.p_prime = p_prime;
  p.alpha = q(1, 2);
  return p;
}

}  // namespace

TEST_CASE("block counterexample") {
  const auto f = build_block_counterexample(block(2, 3, 4, 4));
  CHECK(f.size() == 12);
  CHECK(f.ground_size() == 48);
  const auto c = setfam::cons_k(f, 2);
  CHECK(c.cons_count == 48);
  CHECK(c.fraction == q(8, 11));
  CHECK(block_product(2, 3) == q(2, 3));
  CHECK(c.fraction > block_product(2, 3));
  for (std::size_t b = 0; b < 3; ++b) {
    const std::vector<std::size_t> idx{4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3};
    CHECK_FALSE(setfam::check_pk_property(f.subfamily(idx), 4, 2, setfam::Repetition::distinct).holds);
  }
  CHECK_THROWS_AS(build_block_counterexample(block(2, 2, 4, 4)), ConstructionError);
  CHECK_THROWS_AS(build_block_counterexample(block(2, 3, 3, 4)), ConstructionError);
  CHECK_THROWS_WITH_AS(build_block_counterexample(block(2, 3, 4, 4), 10),
                       doctest::Contains("ground set"), ConstructionError);
}

TEST_CASE("block counterexample counts C(r,k) m^k intersecting tuples") {
  for (std::size_t k = 2; k <= 3; ++k) {
    for (std::size_t r = k + 2; r <= 5; ++r) {
      for (std::size_t m = 2; m <= 3; ++m) {
        BlockParams p = block(k, r, m, 2);
        p.alpha = block_product(k, r) / 2;
        const auto f = build_block_counterexample(p);
        BigInt expected = binomial(r, k);
        for (std::size_t j = 0; j < k; ++j) expected *= m;
        CHECK(BigInt(setfam::cons_k(f, k).cons_count) == expected);
        if (f.ground_size() <= 64) CHECK(setfam::cons_k(f, k).cons_count == oracle::cons_count(f, k));
      }
    }
  }
}

TEST_CASE("tp2 grid") {
  const auto f = build_tp2_grid(2, 3);
  CHECK(f.size() == 6);
  CHECK(f.ground_size() == 9);
  const auto c = setfam::cons_k(f, 2);
  CHECK(c.cons_count == 9);
  CHECK(c.fraction == q(3, 5));
  CHECK(c.fraction >= q(1, 4));
  CHECK(setfam::check_fhp_instance(f, 2, q(1, 4)).best_beta == q(1, 3));
  for (std::size_t m = 1; m <= 5; ++m)
    CHECK(setfam::check_fhp_instance(build_tp2_grid(1, m), 1, 0).best_beta == q(1, m));
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t m = 2; m <= 4; ++m) {
      const auto g = build_tp2_grid(k, m);
      CHECK(setfam::check_fhp_instance(g, k, 0).best_beta == q(1, m));
      BigInt mk = 1;
      for (std::size_t j = 0; j < k; ++j) mk *= m;
      CHECK(BigInt(setfam::cons_k(g, k).cons_count) == mk);
    }
  }
  const auto wide = build_tp2_grid(2, 4, 3);
  CHECK(setfam::check_pk_property(wide.subfamily(std::vector<std::size_t>{0, 1, 2, 3}), 3, 3,
                                  setfam::Repetition::distinct)
            .holds == false);
  CHECK_THROWS_AS(build_tp2_grid(0, 3), ConstructionError);
  CHECK_THROWS_AS(build_tp2_grid(5, 10, 2, 1000), ConstructionError);
}

TEST_CASE("two-order cross") {
  const auto f = build_two_order_cross(6);
  CHECK(setfam::cons_k(f, 2).fraction == 1);
  CHECK(setfam::cons_k(f, 3).cons_count == 0);
  CHECK(setfam::check_fhp_instance(f, 2, 1).best_beta == q(2, 6));
  CHECK(setfam::cons_k(build_two_order_cross(2), 2).cons_count == 1);
  for (std::size_t n = 2; n <= 30; ++n)
    CHECK(setfam::check_fhp_instance(build_two_order_cross(n), 2, 1).best_beta == q(2, n));
  CHECK_THROWS_AS(build_two_order_cross(1), ConstructionError);
}

TEST_CASE("caps family") {
  const auto atoms = caps_atoms(2, 2);
  CHECK(atoms == std::vector<std::string>{"0", "1", "00", "01", "10", "11"});
  auto names = [&](const std::vector<Element>& members) {
    std::set<std::string> out;
    for (auto e : members) out.insert(atoms[e]);
    return out;
  };
  CHECK(names(caps_member(2, 2, 0, 0)) == std::set<std::string>{"0", "00", "01"});
  CHECK(names(caps_member(2, 2, 1, 1)) == std::set<std::string>{"01", "11"});
  CHECK(caps_member(2, 1, 1, 0).empty());
  const auto f = build_caps_family(2, 2);
  std::vector<Element> meet;
  setfam::intersect_into(f.member(0), f.member(3), meet);
  CHECK(names(meet) == std::set<std::string>{"01"});
  setfam::intersect_into(f.member(0), f.member(1), meet);
  CHECK(meet.empty());
}

TEST_CASE("caps rows are disjoint and every branch meets") {
  for (std::size_t w = 1; w <= 6; ++w) {
    for (std::size_t d = 1; w * d <= 12 && d <= 6; ++d) {
      const auto f = build_caps_family(w, d);
      CHECK(f.size() == w * d);
      std::vector<Element> meet;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < w; ++a)
          for (std::size_t b = a + 1; b < w; ++b) {
            setfam::intersect_into(f.member(i * w + a), f.member(i * w + b), meet);
            CHECK(meet.empty());
          }
      // every f : [n] -> [W], n <= D
      std::vector<std::size_t> path;
      std::function<void()> walk = [&] {
        if (!path.empty()) {
          std::vector<Element> acc(f.member(path[0]).begin(), f.member(path[0]).end());
          for (std::size_t i = 1; i < path.size(); ++i) {
            setfam::intersect_into(acc, f.member(i * w + path[i]), meet);
            acc = meet;
          }
          CHECK_FALSE(acc.empty());
        }
        if (path.size() == d) return;
        for (std::size_t j = 0; j < w; ++j) {
          path.push_back(j);
          walk();
          path.pop_back();
        }
      };
      walk();
    }
  }
}

TEST_CASE("shattered pairs") {
  const auto f = build_shattered_pairs(3);
  CHECK(f.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(f.member(i).size() == 2);
  CHECK(f.labels().front() == "(0,1)");
  CHECK(setfam::check_pk_property(build_shattered_pairs(5), 4, 2).holds);
  CHECK_THROWS_AS(build_shattered_pairs(1), ConstructionError);
  CHECK_THROWS_AS(build_shattered_pairs(10, 100), ConstructionError);
}

TEST_CASE("furedi extraction") {
  CHECK(furedi_gamma(2) == q(1, 2));
  CHECK(furedi_gamma(3) == q(2, 9));
  const auto t = furedi_extract(fhlab::test::triangle(), 100, 5);
  REQUIRE(t);
  CHECK(t->parts.size() == 2);
  CHECK(t->indices.size() >= 1);
  const auto singles = fam(3, {{0}, {1}, {2}, {1}});
  const auto all = furedi_extract(singles, 1, 9);
  REQUIRE(all);
  CHECK(all->indices.size() == 4);
  CHECK_THROWS_AS(furedi_extract(fam(3, {{0, 1}, {2}}), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(furedi_extract(singles, 0, 1), std::invalid_argument);
}

TEST_CASE("furedi extraction certificates") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + uniform_below(rng, 2);
    const std::size_t g = k + uniform_below(rng, 6);
    std::vector<std::vector<Element>> sets;
    const std::size_t n = 3 + uniform_below(rng, 15);
    for (std::size_t i = 0; i < n; ++i) {
      std::set<Element> s;
      while (s.size() < k) s.insert(static_cast<Element>(uniform_below(rng, g)));
      sets.emplace_back(s.begin(), s.end());
    }
    const auto f = fam(g, sets);
    const auto a = furedi_extract(f, 2000, 100 + trial);
    const auto b = furedi_extract(f, 2000, 100 + trial);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->indices == b->indices);
    CHECK(a->trial == b->trial);
    const Rational target = furedi_gamma(k) * Rational(BigInt(n));
    CHECK(Rational(BigInt(a->indices.size() + 1)) > target);
    std::vector<int> colour(g, -1);
    for (std::size_t t = 0; t < a->parts.size(); ++t)
      for (auto e : a->parts[t]) {
        CHECK(colour[e] == -1);
        colour[e] = static_cast<int>(t);
      }
    for (auto i : a->indices) {
      std::set<int> seen;
      for (auto e : f.member(i)) seen.insert(colour[e]);
      CHECK(seen.size() == k);
      CHECK(seen.count(-1) == 0);
    }
  }
}
