// One PASS/FAIL line per acceptance criterion, with the measured time against
// its limit. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles/oracles.hpp"
#include "fhlab/constructs/constructs.hpp"
#include "fhlab/fraclp/transversal.hpp"
#include "fhlab/pseudofield/pseudofield.hpp"
#include "fhlab/setfam/checks.hpp"
#include "fhlab/sqfint/gsystem.hpp"
#include "fhlab/typecount/dividing.hpp"
#include "fhlab/typecount/types.hpp"

using namespace fhlab;
using setfam::SetFamily;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) note << "first failure: " << what << "; ";
    ok = ok && condition;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Outcome&)> body;
};

Rational r(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

SetFamily triangle() { return SetFamily(3, {{0, 1}, {1, 2}, {0, 2}}); }

/// The 200 seeded families shared by criteria 1 and 2.
const std::vector<SetFamily>& lp_families() {
  static const std::vector<SetFamily> families = [] {
    Rng rng(1001);
    std::vector<SetFamily> out;
    while (out.size() < 200) {
      const std::size_t n = 1 + uniform_below(rng, 12);
      const std::size_t g = 1 + uniform_below(rng, 12);
      auto f = oracle::random_family(rng, n, g, 1 + uniform_below(rng, 2), 3);
      if (f.empty_members().empty()) out.push_back(std::move(f));
    }
    return out;
  }();
  return families;
}

void lp_duality(Outcome& o) {
  o.require(fraclp::intersection_number(triangle()).value == r(2, 3), "triangle i = 2/3");
  o.require(fraclp::fractional_transversal(triangle()).tau_star == r(3, 2), "triangle tau* = 3/2");
  std::size_t oracle_checked = 0;
  for (const auto& f : lp_families()) {
    const auto i = fraclp::intersection_number(f);
    const auto t = fraclp::fractional_transversal(f);
    o.require(i.value * t.tau_star == 1, "i * tau* = 1");
    if (const auto expected = oracle::vertex_tau_star(f, 3'000'000)) {
      ++oracle_checked;
      o.require(*expected == t.tau_star, "tau* equals vertex enumeration");
    }
  }
  o.note << lp_families().size() << " families, " << oracle_checked << " checked by vertex enumeration";
}

void kelley(Outcome& o) {
  std::uint64_t sequences = 0;
  for (const auto& f : lp_families()) {
    const Rational i = fraclp::intersection_number(f).value;
    const std::size_t n = f.size();
    // the ratio is invariant under reordering, so non-decreasing sequences suffice
    for (std::size_t len = 1; len <= 5; ++len) {
      std::vector<std::size_t> seq(len, 0);
      while (true) {
        ++sequences;
        o.require(setfam::sequence_ratio(f, seq) >= i, "sequence ratio >= i(F)");
        std::size_t pos = len;
        while (pos > 0 && seq[pos - 1] == n - 1) --pos;
        if (pos == 0) break;
        const std::size_t v = ++seq[pos - 1];
        for (std::size_t j = pos; j < len; ++j) seq[j] = v;
      }
    }
  }
  o.note << sequences << " multisets";
}

void block(Outcome& o) {
  constructs::BlockParams p;
  p.k = 2;
  p.r = 3;
  p.m = 4;
  p.p_prime = 4;
  const auto f = constructs::build_block_counterexample(p);
  const auto c = setfam::cons_k(f, 2);
  o.require(c.cons_count == 48, "cons_2 = 48");
  o.require(c.fraction == r(8, 11), "fraction 8/11");
  o.require(constructs::block_product(2, 3) == r(2, 3) && c.fraction > r(2, 3), "fraction > 2/3");
  // every subfamily containing a full block: the block plus any extra members
  for (std::size_t b = 0; b < 3; ++b) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < 12; ++i)
      if (i / 4 != b) others.push_back(i);
    for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
      std::vector<std::size_t> idx{4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3};
      for (std::size_t j = 0; j < others.size(); ++j)
        if ((mask >> j) & 1U) idx.push_back(others[j]);
      o.require(!setfam::check_pk_property(f.subfamily(idx), 4, 2, setfam::Repetition::distinct).holds,
                "subfamily with a full block fails (4,2)");
    }
  }
  o.note << "3 x 256 subfamilies checked";
}

void tp2(Outcome& o) {
  for (std::size_t m : {4, 5, 8}) {
    const auto f = constructs::build_tp2_grid(3, m);
    const auto report = setfam::check_fhp_instance(f, 3, r(1, 27));
    o.require(report.cons.fraction >= r(1, 27), "cons_3 fraction >= 1/27");
    o.require(report.best_beta == r(1, static_cast<std::int64_t>(m)), "best_beta = 1/m");
    o.note << "m=" << m << ": fraction " << to_string(report.cons.fraction) << "; ";
  }
}

void cross(Outcome& o) {
  for (std::size_t n = 4; n <= 20; ++n) {
    const auto f = constructs::build_two_order_cross(n);
    o.require(setfam::cons_k(f, 2).fraction == 1, "cons_2 fraction 1");
    o.require(setfam::cons_k(f, 3).cons_count == 0, "cons_3 = 0");
    o.require(setfam::check_fhp_instance(f, 2, 1).best_beta == r(2, static_cast<std::int64_t>(n)),
              "best_beta = 2/n");
  }
}

void caps(Outcome& o) {
  const std::size_t W = 3, D = 4;
  const auto f = constructs::build_caps_family(W, D);
  std::vector<setfam::Element> meet;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t a = 0; a < W; ++a)
      for (std::size_t b = a + 1; b < W; ++b) {
        setfam::intersect_into(f.member(i * W + a), f.member(i * W + b), meet);
        o.require(meet.empty(), "rows pairwise disjoint");
      }
  std::size_t branches = 0;
  for (std::size_t code = 0; code < 81; ++code) {
    std::size_t c = code;
    std::vector<setfam::Element> acc(f.member(c % W).begin(), f.member(c % W).end());
    c /= W;
    for (std::size_t i = 1; i < D; ++i, c /= W) {
      setfam::intersect_into(acc, f.member(i * W + c % W), meet);
      acc = meet;
    }
    o.require(!acc.empty(), "branch intersection nonempty");
    ++branches;
  }
  o.note << branches << " branches";
}

void shattered(Outcome& o) {
  const auto f5 = constructs::build_shattered_pairs(5);
  o.require(check_pk_property(f5, 4, 2, setfam::Repetition::distinct).holds, "m=5 (4,2) over distinct quadruples");
  o.require(check_pk_property(f5, 4, 2).holds, "m=5 (4,2) with repetition");
  std::vector<std::size_t> sizes;
  for (std::size_t m = 3; m <= 5; ++m) {
    const auto f = constructs::build_shattered_pairs(m);
    sizes.push_back(fraclp::min_transversal_exact(f, f.ground_size())->size);
  }
  o.note << "min transversals " << sizes[0] << "," << sizes[1] << "," << sizes[2] << "; ";
  o.require(sizes[0] < sizes[1] && sizes[1] < sizes[2], "transversal strictly increasing over m=3,4,5");
}

void furedi(Outcome& o) {
  Rng rng(2001);
  std::uint64_t worst_trial = 0;
  for (int family = 0; family < 50; ++family) {
    std::vector<std::vector<setfam::Element>> sets;
    for (int i = 0; i < 60; ++i) {
      std::set<setfam::Element> s;
      while (s.size() < 3) s.insert(static_cast<setfam::Element>(uniform_below(rng, 25)));
      sets.emplace_back(s.begin(), s.end());
    }
    const SetFamily f(25, sets);
    const auto found = constructs::furedi_extract(f, 10'000, 3000 + family);
    o.require(found.has_value(), "rainbow subfamily found");
    if (!found) continue;
    o.require(found->indices.size() >= 13, "size >= 13");
    worst_trial = std::max(worst_trial, found->trial);
  }
  o.note << "worst trial index " << worst_trial;
}

sqfint::GSystem shifts(const std::vector<std::int64_t>& c) {
  sqfint::GSystem sys;
  sys.formula.s = c.size();
  sys.c = c;
  return sys;
}

void squarefree(Outcome& o) {
  const double count = static_cast<double>(sqfint::count_squarefree(1'000'000));
  const double expected = 6.0 / (M_PI * M_PI) * 1e6;
  o.require(std::abs(count - expected) / expected < 1e-3, "square-free count within 0.1%");
  o.note << "count " << count << "; ";
  Rng rng(3001);
  int systems = 0;
  while (systems < 20) {
    std::vector<std::int64_t> c{0};
    while (c.size() < 3) {
      const auto v = static_cast<std::int64_t>(1 + uniform_below(rng, 50));
      if (std::find(c.begin(), c.end(), v) == c.end()) c.push_back(v);
    }
    const auto sys = shifts(c);
    if (sqfint::first_unsatisfiable_prime(sys)) continue;
    ++systems;
    const auto cert = sqfint::density_certificate(sys.formula, 10007);
    for (std::int64_t t : {1000, 10000, 100000})
      o.require(sqfint::meets_density_bound(sqfint::count_solutions_window(sys, t), cert.epsilon_lower, sys, t),
                "count >= eps t - error");
  }
  o.require(!sqfint::p_satisfiable(shifts({0, 1, 2, 3}), 2).satisfiable, "{x..x+3} 2-unsatisfiable");
}

void lines(Outcome& o) {
  pseudofield::FamilySpec spec;
  spec.phi = logic::parse_formula(R"(["=", "y", ["+", ["*", "a", "x"], "b"]])");
  spec.x = {"x", "y"};
  spec.y = {"a", "b"};
  spec.psi = logic::parse_formula(R"(["true"])");
  for (std::uint32_t q : {11u, 31u}) {
    const logic::FieldStructure field(q);
    const auto fam = pseudofield::definable_family(field, spec);
    o.require(fam.family.size() == q * q, "q^2 members");
    bool fits = true;
    for (std::size_t i = 0; i < fam.family.size(); ++i) {
      o.require(fam.family.member(i).size() == q, "member size q");
      const auto fit = pseudofield::dim_meas_fit(fam.family.member(i).size(), q, 2);
      fits = fits && fit.d == 1 && fit.mu == 1;
    }
    o.require(fits, "dim_meas_fit (1,1) for every line");
    const auto report = setfam::check_fhp_instance(fam.family, 2, r(1, 2));
    const std::int64_t Q = q;
    o.require(report.best_beta == r(1, Q), "best_beta = 1/q");
    o.require(report.cons.fraction == 1 - r(Q - 1, Q * Q - 1), "cons_2 fraction");
  }
}

struct CorpusStructure {
  std::string name;
  logic::FiniteStructure structure;
  std::vector<typecount::Tuple> pool;
};

std::vector<CorpusStructure> type_corpus() {
  std::vector<CorpusStructure> out;
  for (auto [k, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}) {
    auto enc = typecount::encode_membership(constructs::build_tp2_grid(k, m));
    out.push_back({"grid", std::move(enc.structure), std::move(enc.pool)});
  }
  auto eq = typecount::equality_structure(6);
  std::vector<typecount::Tuple> pool;
  for (logic::Value v = 0; v < 6; ++v) pool.push_back({v});
  out.push_back({"equality", std::move(eq), pool});
  Rng rng(4001);
  for (int i = 0; i < 6; ++i) {
    auto enc = typecount::encode_membership(oracle::random_family(rng, 6, 5, 1, 2));
    out.push_back({"random", std::move(enc.structure), std::move(enc.pool)});
  }
  return out;
}

void type_counting(Outcome& o) {
  const auto in = logic::parse_formula(R"(["rel", "In", "x", "y"])");
  const auto eq = logic::parse_formula(R"(["=", "x", "y"])");
  std::size_t compared = 0;
  for (const auto& c : type_corpus()) {
    const auto& formula = c.name == "equality" ? eq : in;
    const typecount::Phi phi(c.structure, formula, {"x"}, {"y"});
    const std::size_t lmax = std::min<std::size_t>(6, c.pool.size());
    std::vector<std::vector<std::vector<std::size_t>>> values(3, std::vector<std::vector<std::size_t>>(4, std::vector<std::size_t>(lmax + 1, 0)));
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; l <= lmax; ++l) {
          const auto got = typecount::f_phi(phi, m, k, c.pool, l);
          o.require(got.exact, "exact mode");
          o.require(got.value == oracle::f_phi(c.structure, formula, {"x"}, {"y"}, c.pool, m, k, l),
                    c.name + " f_phi equals enumeration");
          ++compared;
          BigInt bound = 0;
          for (std::size_t i = 1; i <= k; ++i) bound += binomial(l, i);
          o.require(BigInt(got.value) <= bound, "C(l, <=k) bound");
          values[m][k][l] = got.value;
        }
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; l <= lmax; ++l) {
          if (m < 2) o.require(values[m][k][l] <= values[m + 1][k][l], "monotone in m");
          if (k < 3) o.require(values[m][k][l] <= values[m][k + 1][l], "monotone in k");
          if (l < lmax) o.require(values[m][k][l] <= values[m][k][l + 1], "monotone in l");
        }
  }
  for (auto [k, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto enc = typecount::encode_membership(constructs::build_tp2_grid(k, m));
    const typecount::Phi phi(enc.structure, in, {"x"}, {"y"});
    const auto v = typecount::f_phi(phi, 1, k, enc.pool, k * m).value;
    std::size_t mk = 1;
    for (std::size_t j = 0; j < k; ++j) mk *= m;
    o.require(v >= mk, "grid value >= m^k");
    o.note << "grid k=" << k << " m=" << m << ": " << v << "; ";
  }
  o.note << compared << " values compared";
}

void zarankiewicz(Outcome& o) {
  Rng rng(5001);
  std::size_t compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 2 + uniform_below(rng, 2);
    const std::size_t n = k + 1 + uniform_below(rng, 13 - k - 1);
    std::vector<typecount::Edge> edges;
    const std::uint64_t keep = 2 + uniform_below(rng, 3);
    oracle::for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
      if (uniform_below(rng, keep) != 0) edges.emplace_back(idx.begin(), idx.end());
    });
    if (edges.empty()) continue;
    for (std::size_t d = 1; d <= 2; ++d) {
      o.require(typecount::find_kddd(n, edges, d).has_value() == oracle::has_kddd(n, edges, k, d),
                "find_kddd agrees with brute force");
      ++compared;
    }
  }
  std::vector<std::pair<std::size_t, std::vector<typecount::Edge>>> c4_free;
  for (std::uint32_t q : {2u, 3u, 5u}) c4_free.emplace_back(q * q + q + 1, typecount::polarity_graph(q));
  for (std::size_t l = 4; l <= 40; l += 3) c4_free.emplace_back(l, typecount::random_c4_free_graph(l, 6000 + l));
  for (const auto& [l, edges] : c4_free) {
    if (l <= 12) {
      o.require(!oracle::has_kddd(l, edges, 2, 2), "corpus graph is K22-free");
      ++compared;
    }
    o.require(!typecount::find_kddd(l, edges, 2), "corpus graph is K22-free");
    const double e = static_cast<double>(edges.size());
    o.require(e * e <= static_cast<double>(l) * l * l, "|E| <= l^(3/2)");
  }
  o.note << compared << " brute-force comparisons, " << c4_free.size() << " C4-free graphs";
}

void measure(Outcome& o) {
  Rng rng(7001);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 4);
    const auto f = oracle::random_family(rng, n, 5, 1, 2);
    const std::uint64_t den = 1 + uniform_below(rng, 6);
    // weights k_i / den summing to one
    std::vector<std::uint64_t> parts(n, 0);
    for (std::uint64_t unit = 0; unit < den; ++unit) ++parts[uniform_below(rng, n)];
    std::map<std::size_t, Rational> weights;
    for (std::size_t i = 0; i < n; ++i)
      if (parts[i]) weights[i] = Rational(BigInt(parts[i]), BigInt(den));
    const setfam::RationalWeights w(weights);
    const auto expanded = setfam::expand_by_weights(f, w);
    const std::uint64_t D = expanded.size();
    for (std::size_t d = 1; d <= std::min<std::uint64_t>(3, D); ++d) {
      const auto m = setfam::measure_fhp_check(f, w, d, r(1, 2));
      BigInt dd = 1, fact = 1;
      for (std::size_t i = 0; i < d; ++i) dd *= D;
      for (std::size_t i = 2; i <= d; ++i) fact *= i;
      const Rational scaled = m.consistent_mass * Rational(dd);
      const Rational distinct(fact * BigInt(setfam::cons_k(expanded, d).cons_count));
      o.require(scaled >= distinct, "mass >= distinct tuples");
      o.require(scaled - distinct <= Rational(setfam::diagonal_correction_bound(d, D)), "diagonal bound");
      o.require(m.max_depth_mass == setfam::check_fhp_instance(expanded, d, r(1, 2)).best_beta,
                "depth mass equals replicated best_beta");
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "lp-duality", 60, lp_duality},
      {2, "kelley-sequences", 120, kelley},
      {3, "block-counterexample", 1, block},
      {4, "tp2-grid", 30, tp2},
      {5, "two-order-cross", 5, cross},
      {6, "caps-family", 5, caps},
      {7, "shattered-pairs", 60, shattered},
      {8, "furedi-extraction", 120, furedi},
      {9, "square-free", 300, squarefree},
      {10, "finite-field-lines", 120, lines},
      {11, "type-counting", 300, type_counting},
      {12, "zarankiewicz", 120, zarankiewicz},
      {13, "measure-equivalence", 120, measure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit_s;
    if (!pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "(%.2fs / %.0fs)", secs, c.limit_s);
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.name << " " << timing << " "
              << o.note.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
