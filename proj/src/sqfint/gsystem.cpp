#include "fhlab/sqfint/gsystem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fhlab/sqfint/arith.hpp"

namespace fhlab::sqfint {

namespace {

using i128 = __int128;

constexpr std::uint64_t kResidueCap = std::uint64_t{1} << 24;

std::uint64_t mod(i128 value, std::uint64_t modulus) {
  i128 r = value % static_cast<i128>(modulus);
  if (r < 0) r += modulus;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t term_mod(const LinearTerm& term, std::int64_t x, const std::vector<std::int64_t>& c,
                       const std::vector<std::int64_t>& c_prime, std::uint64_t modulus) {
  auto prod = [&](std::int64_t a, std::int64_t b) {
    return static_cast<i128>(mod(a, modulus)) * static_cast<i128>(mod(b, modulus));
  };
  i128 acc = prod(term.x, x) % modulus;
  for (std::size_t i = 0; i < term.z.size(); ++i) acc = (acc + prod(term.z[i], c[i])) % modulus;
  for (std::size_t j = 0; j < term.z_prime.size(); ++j)
    acc = (acc + prod(term.z_prime[j], c_prime[j])) % modulus;
  acc = (acc + mod(term.constant, modulus)) % modulus;
  return static_cast<std::uint64_t>(acc);
}

bool eval_condition(const PCondition& cond, std::uint64_t p, std::int64_t x,
                    const std::vector<std::int64_t>& c, const std::vector<std::int64_t>& c_prime) {
  switch (cond.kind) {
    case PCondition::Kind::not_in_u:
      // level 0 gives modulus 1: every term lies in U_{p,0}
      return term_mod(cond.term, x, c, c_prime, checked_pow(p, cond.level)) != 0;
    case PCondition::Kind::conjunction:
      return std::all_of(cond.children.begin(), cond.children.end(),
                         [&](const PCondition& ch) { return eval_condition(ch, p, x, c, c_prime); });
    case PCondition::Kind::disjunction:
      return std::any_of(cond.children.begin(), cond.children.end(),
                         [&](const PCondition& ch) { return eval_condition(ch, p, x, c, c_prime); });
    case PCondition::Kind::negation:
      return !eval_condition(cond.children.at(0), p, x, c, c_prime);
  }
  return false;
}

void validate_condition(const PCondition& cond, const SpecialFormula& f) {
  switch (cond.kind) {
    case PCondition::Kind::not_in_u:
      if (cond.term.z.size() > f.s || cond.term.z_prime.size() > f.s_prime)
        throw std::invalid_argument("p-condition term references undeclared variables");
      return;
    case PCondition::Kind::negation:
      if (cond.children.size() != 1)
        throw std::invalid_argument("negation takes exactly one condition");
      break;
    default:
      break;
  }
  for (const auto& ch : cond.children) validate_condition(ch, f);
}

unsigned level_for(const SpecialFormula& f, std::uint64_t p) {
  unsigned v = 0;
  for (std::uint64_t m = f.m; m % p == 0; m /= p) ++v;
  return 2 + v;
}

std::uint64_t magnitude(std::int64_t a) {
  return a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
}

std::int64_t checked_form(std::int64_t k, std::int64_t a, std::int64_t c, const std::string& name) {
  const i128 v = static_cast<i128>(k) * a + c;
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("64-bit overflow evaluating form " + name);
  return static_cast<std::int64_t>(v);
}

std::string form_name(const char* var, std::size_t i) {
  return std::string("kx+") + var + "_" + std::to_string(i);
}

// Solutions of k a = -c (mod M), as (a0, step); nullopt when there is none.
std::optional<std::pair<std::uint64_t, std::uint64_t>> solve_linear(std::int64_t k, std::int64_t c,
                                                                    std::uint64_t M) {
  const std::uint64_t km = mod(k, M);
  const std::uint64_t target = mod(-static_cast<i128>(c), M);
  const std::uint64_t g = std::gcd(km, M);
  if (target % g != 0) return std::nullopt;
  const std::uint64_t step = M / g;
  if (step == 1) return std::make_pair(std::uint64_t{0}, std::uint64_t{1});
  // inverse of km/g modulo step
  i128 old_r = static_cast<i128>((km / g) % step), r = step, old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  const std::uint64_t inv = mod(old_s, step);
  const std::uint64_t a0 =
      static_cast<std::uint64_t>(static_cast<i128>((target / g) % step) * inv % step);
  return std::make_pair(a0, step);
}

// Marks a in [1, t) whose value k*a + c is outside P_m (zero or divisible by p^{l_p}).
std::vector<bool> outside_pm(const SpecialFormula& f, std::int64_t c, std::int64_t t,
                             const std::string& name) {
  std::vector<bool> bad(static_cast<std::size_t>(std::max<std::int64_t>(t - 1, 0)), false);
  if (t <= 1) return bad;
  const std::int64_t first = checked_form(f.k, 1, c, name);
  const std::int64_t last = checked_form(f.k, t - 1, c, name);
  const std::uint64_t max_abs = std::max(magnitude(first), magnitude(last));
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(max_abs))) + 1;
  if (root > 50'000'000)
    throw std::invalid_argument("form " + name + " takes values too large to sieve");
  for (std::uint64_t p : primes_up_to(root)) {
    const std::uint64_t M = checked_pow(p, level_for(f, p));
    if (M > max_abs) continue;
    const auto sol = solve_linear(f.k, c, M);
    if (!sol) continue;
    auto [a0, step] = *sol;
    std::uint64_t a = a0 == 0 ? step : a0;
    for (; a < static_cast<std::uint64_t>(t); a += step) bad[a - 1] = true;
  }
  // zero value
  if ((-c) % f.k == 0) {
    const std::int64_t a = -c / f.k;
    if (a > 0 && a < t) bad[static_cast<std::size_t>(a - 1)] = true;
  }
  return bad;
}

}  // namespace

PCondition PCondition::atom(LinearTerm term, unsigned level) {
  PCondition out;
  out.kind = Kind::not_in_u;
  out.term = std::move(term);
  out.level = level;
  return out;
}

unsigned PCondition::max_level() const {
  unsigned level = kind == Kind::not_in_u ? this->level : 0;
  for (const auto& ch : children) level = std::max(level, ch.max_level());
  return level;
}

void SpecialFormula::validate() const {
  if (k == 0) throw std::invalid_argument("special formula needs k != 0");
  if (m == 0) throw std::invalid_argument("special formula needs m >= 1");
  for (const auto& [p, cond] : theta) {
    if (!is_prime(p)) throw std::invalid_argument("p-condition key " + std::to_string(p) + " is not prime");
    validate_condition(cond, *this);
  }
}

void GSystem::validate() const {
  formula.validate();
  if (c.size() != formula.s || c_prime.size() != formula.s_prime)
    throw std::invalid_argument("G-system parameter lengths do not match the formula's slots");
}

bool GSystem::nontrivial() const {
  for (std::int64_t a : c)
    for (std::int64_t b : c_prime)
      if (a == b) return false;
  return true;
}

bool GSystem::holds(std::int64_t x) const {
  for (const auto& [p, cond] : formula.theta)
    if (!eval_condition(cond, p, x, c, c_prime)) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!in_Pm(checked_form(formula.k, x, c[i], form_name("c", i)), formula.m)) return false;
  for (std::size_t j = 0; j < c_prime.size(); ++j)
    if (in_Pm(checked_form(formula.k, x, c_prime[j], form_name("c'", j)), formula.m)) return false;
  return true;
}

PSatisfiability p_satisfiable(const GSystem& system, std::uint64_t p) {
  system.validate();
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const auto& f = system.formula;
  const unsigned lp = level_for(f, p);
  const auto it = f.theta.find(p);
  const unsigned top = std::max(lp, it == f.theta.end() ? 0U : it->second.max_level());
  PSatisfiability out;
  out.modulus = checked_pow(p, top);
  if (out.modulus > kResidueCap)
    throw std::invalid_argument("residue enumeration modulo " + std::to_string(out.modulus) +
                                " exceeds the cap");
  const std::uint64_t Mp = checked_pow(p, lp);
  for (std::uint64_t r = 0; r < out.modulus; ++r) {
    const auto x = static_cast<std::int64_t>(r);
    if (it != f.theta.end() && !eval_condition(it->second, p, x, system.c, system.c_prime))
      continue;
    bool ok = true;
    for (std::int64_t ci : system.c) {
      if (mod(static_cast<i128>(mod(f.k, Mp)) * r + mod(ci, Mp), Mp) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.satisfiable = true;
      out.witness = r;
      return out;
    }
  }
  return out;
}

std::vector<std::uint64_t> local_obstruction_primes(const GSystem& system) {
  std::set<std::uint64_t> primes;
  for (const auto& [p, cond] : system.formula.theta) primes.insert(p);
  std::uint64_t k = magnitude(system.formula.k);
  for (std::uint64_t p = 2; p <= k / p; ++p) {
    while (k % p == 0) {
      primes.insert(p);
      k /= p;
    }
  }
  if (k > 1) primes.insert(k);
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(system.c.size())))))
    primes.insert(p);
  return {primes.begin(), primes.end()};
}

std::optional<std::uint64_t> first_unsatisfiable_prime(const GSystem& system) {
  for (std::uint64_t p : local_obstruction_primes(system))
    if (!p_satisfiable(system, p).satisfiable) return p;
  return std::nullopt;
}

DensityCertificate density_certificate(const SpecialFormula& formula, std::uint64_t tail_prime) {
  formula.validate();
  if (!formula.positive()) throw std::invalid_argument("density certificate needs a positive formula");
  const std::size_t n = formula.s;
  if (tail_prime <= 2 * n)
    throw std::invalid_argument("tail prime must exceed 2n = " + std::to_string(2 * n));

  DensityCertificate cert;
  cert.n = n;
  cert.k = formula.k;
  cert.tail_prime = tail_prime;

  std::set<std::uint64_t> local;
  for (const auto& [p, cond] : formula.theta) local.insert(p);
  const std::uint64_t kk = magnitude(formula.k);
  const auto primes = primes_up_to(std::max<std::uint64_t>(tail_prime, std::max<std::uint64_t>(kk <= 1'000'000 ? kk : 0, n)));
  for (std::uint64_t p : primes) {
    if (kk % p == 0) local.insert(p);
    if (checked_pow(p, 2) <= n && n >= checked_pow(p, level_for(formula, p))) local.insert(p);
  }
  if (kk > 1'000'000) {
    std::uint64_t rest = kk;
    for (std::uint64_t p = 2; p <= rest / p; ++p)
      while (rest % p == 0) {
        local.insert(p);
        rest /= p;
      }
    if (rest > 1) local.insert(rest);
  }
  for (std::uint64_t p : local) {
    const auto it = formula.theta.find(p);
    const unsigned e = std::max(level_for(formula, p), it == formula.theta.end() ? 0U : it->second.max_level());
    cert.D *= BigInt(checked_pow(p, e));
  }
  cert.local_primes.assign(local.begin(), local.end());
  cert.B = local.empty() ? 0 : *local.rbegin();

  const Rational base = Rational(BigInt(1), 2 * cert.D);
  if (n == 0) {
    cert.epsilon_lower = cert.epsilon_upper = base;
    return cert;
  }
  const BigInt grid = BigInt(1) << 80;
  Rational lower = 1;
  Rational upper = 1;
  for (std::uint64_t p : primes) {
    if (p > tail_prime) break;
    if (local.count(p) != 0) continue;
    const BigInt q = BigInt(checked_pow(p, level_for(formula, p)));
    const Rational factor = Rational(q - n, q);
    lower = round_down(lower * factor, grid);
    upper = round_up(upper * factor, grid);
  }
  const Rational tail = 1 - Rational(BigInt(2 * n), BigInt(tail_prime));
  cert.epsilon_upper = base * upper;
  cert.epsilon_lower = base * round_down(lower * tail, grid);
  return cert;
}

double error_term(const GSystem& system, std::int64_t t) {
  double sum = 1;
  for (std::int64_t ci : system.c) {
    const i128 v = static_cast<i128>(system.formula.k) * t + ci;
    sum += std::sqrt(std::fabs(static_cast<double>(ci))) + std::sqrt(std::fabs(static_cast<double>(v)));
  }
  return sum;
}

std::int64_t error_term_floor(const GSystem& system, std::int64_t t) {
  auto isqrt = [](std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r > v / r) --r;
    while ((r + 1) <= v / (r + 1)) ++r;
    return r;
  };
  std::int64_t sum = 1;
  for (std::size_t i = 0; i < system.c.size(); ++i) {
    const std::int64_t v = checked_form(system.formula.k, t, system.c[i], form_name("c", i));
    sum += static_cast<std::int64_t>(isqrt(magnitude(system.c[i])) + isqrt(magnitude(v)));
  }
  return sum;
}

bool meets_density_bound(std::uint64_t count, const Rational& epsilon, const GSystem& system,
                         std::int64_t t) {
  return Rational(BigInt(count)) >= epsilon * BigInt(t) - BigInt(error_term_floor(system, t));
}

std::vector<bool> solution_mask(const GSystem& system, std::int64_t t) {
  system.validate();
  if (t < 1) throw std::invalid_argument("window needs t >= 1");
  if (t > 200'000'000) throw std::invalid_argument("window above the 2e8 cap");
  const auto& f = system.formula;
  std::vector<bool> ok(static_cast<std::size_t>(t - 1), true);
  for (std::size_t i = 0; i < system.c.size(); ++i) {
    const auto bad = outside_pm(f, system.c[i], t, form_name("c", i));
    for (std::size_t a = 0; a < ok.size(); ++a)
      if (bad[a]) ok[a] = false;
  }
  for (std::size_t j = 0; j < system.c_prime.size(); ++j) {
    const auto bad = outside_pm(f, system.c_prime[j], t, form_name("c'", j));
    for (std::size_t a = 0; a < ok.size(); ++a)
      if (!bad[a]) ok[a] = false;
  }
  for (const auto& [p, cond] : f.theta) {
    const std::uint64_t period = checked_pow(p, cond.max_level());
    if (period > kResidueCap)
      throw std::invalid_argument("p-condition period " + std::to_string(period) + " exceeds the cap");
    std::vector<bool> table(period);
    for (std::uint64_t r = 0; r < period; ++r)
      table[r] = eval_condition(cond, p, static_cast<std::int64_t>(r), system.c, system.c_prime);
    for (std::size_t a = 0; a < ok.size(); ++a)
      if (ok[a] && !table[(a + 1) % period]) ok[a] = false;
  }
  return ok;
}

std::uint64_t count_solutions_window(const GSystem& system, std::int64_t t) {
  const auto mask = solution_mask(system, t);
  return static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), true));
}

std::uint64_t count_squarefree(std::int64_t t) {
  GSystem system;
  system.formula.s = 1;
  system.c = {0};
  return count_solutions_window(system, t);
}

SqfFhpReport sqf_fhp_experiment(
    const SpecialFormula& formula,
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>& parameters,
    std::size_t k, const Rational& alpha, std::int64_t window, std::uint64_t tail_prime) {
  formula.validate();
  if (window < 1) throw std::invalid_argument("window needs t >= 1");
  std::vector<std::vector<setfam::Element>> members;
  std::vector<std::string> labels;
  for (const auto& [c, c_prime] : parameters) {
    GSystem system{formula, c, c_prime};
    const auto mask = solution_mask(system, window);
    std::vector<setfam::Element> set;
    for (std::size_t a = 0; a < mask.size(); ++a)
      if (mask[a]) set.push_back(static_cast<setfam::Element>(a));
    members.push_back(std::move(set));
  }
  const setfam::SetFamily family(static_cast<std::size_t>(window - 1), std::move(members));

  SqfFhpReport report;
  report.window = window;
  report.fhp = setfam::check_fhp_instance(family, k, alpha);
  report.all_empty = family.empty_members().size() == family.size();
  // The certificate only sees k, m, s and the primes and levels of theta, so
  // the z' coefficients can be dropped.
  SpecialFormula shape = formula;
  shape.s_prime = 0;
  std::function<void(PCondition&)> strip = [&](PCondition& cond) {
    cond.term.z_prime.clear();
    for (auto& ch : cond.children) strip(ch);
  };
  for (auto& [p, cond] : shape.theta) strip(cond);
  report.certificate = density_certificate(shape, tail_prime);
  report.delta = report.certificate.epsilon_lower / 2;
  const std::size_t s = formula.s;
  const std::size_t sp = formula.s_prime;
  const std::size_t total = s + sp;
  BigInt fact = 1;
  BigInt pw = 1;
  for (std::size_t i = 1; i <= total; ++i) {
    fact *= i;
    pw *= total;
  }
  report.gamma = total == 0 ? Rational(1) : Rational(fact, pw);
  if (sp == 0) {
    report.beta_theory = alpha * report.delta;
  } else {
    BigInt spread = 1;
    for (std::size_t i = 0; i < s; ++i) spread *= total;
    report.beta_theory = alpha * report.gamma * report.delta /
                         Rational(BigInt(std::max<std::size_t>(s, 1)) * sp * spread);
  }
  return report;
}

DicksonResult dickson_admissible(const std::vector<std::pair<std::int64_t, std::int64_t>>& forms,
                                 std::uint64_t prime_bound) {
  if (forms.empty()) throw std::invalid_argument("dickson_admissible needs at least one form");
  std::set<std::uint64_t> primes;
  const auto small = primes_up_to(std::max<std::uint64_t>(prime_bound, forms.size()));
  primes.insert(small.begin(), small.end());
  for (const auto& [a, b] : forms) {
    if (a < 1) throw std::invalid_argument("form coefficient a_i must be >= 1");
    std::uint64_t g = std::gcd(magnitude(a), magnitude(b));
    for (std::uint64_t p = 2; p <= g / p; ++p)
      while (g % p == 0) {
        primes.insert(p);
        g /= p;
      }
    if (g > 1) primes.insert(g);
  }
  DicksonResult result;
  for (std::uint64_t r : primes) {
    result.checked_up_to = r;
    const bool vanishing = std::any_of(forms.begin(), forms.end(), [&](const auto& form) {
      return mod(form.first, r) == 0 && mod(form.second, r) == 0;
    });
    // Otherwise each form has at most one root mod r.
    bool free_residue = !vanishing && r > forms.size();
    for (std::uint64_t t = 0; t < r && !free_residue; ++t) {
      free_residue = std::all_of(forms.begin(), forms.end(), [&](const auto& form) {
        return mod(static_cast<i128>(form.first) * t + form.second, r) != 0;
      });
    }
    if (!free_residue) {
      result.admissible = false;
      result.obstruction = r;
      return result;
    }
  }
  return result;
}

}  // namespace fhlab::sqfint
