#include "fhlab/pseudofield/pseudofield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fhlab::pseudofield {

namespace {

std::size_t power(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base)
      throw std::invalid_argument(std::string(what) + " exceeds the cap of " + std::to_string(cap));
    out *= base;
  }
  return out;
}

BigInt big_power(std::uint64_t q, std::size_t e) {
  BigInt out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= q;
  return out;
}

// |residual| <= C q^(d - 1/2), squared: residual^2 * q <= C^2 q^(2d).
bool within(const Rational& residual, const Rational& C, std::uint64_t q, std::size_t d) {
  return residual * residual * q <= C * C * Rational(big_power(q, 2 * d));
}

// Simplest rational of denominator <= den_cap in [lo, hi] that is positive.
std::optional<Rational> simplest_positive(const Rational& lo, const Rational& hi,
                                          std::uint64_t den_cap) {
  if (hi <= 0) return std::nullopt;
  Rational out;
  if (lo > 0) {
    if (simplest_in_interval(lo, hi, den_cap, out)) return out;
    return std::nullopt;
  }
  // 1/n with the smallest n such that 1/n <= hi
  const Rational inv = 1 / hi;
  BigInt n = boost::multiprecision::numerator(inv) / boost::multiprecision::denominator(inv);
  if (Rational(n) < inv) n += 1;
  if (n == 0) n = 1;
  if (simplest_in_interval(Rational(BigInt(1), n), hi, den_cap, out)) return out;
  return std::nullopt;
}

}  // namespace

bool eval_formula(const logic::Structure& structure, const FormulaTree& formula,
                  const std::vector<std::string>& vars, const std::vector<Value>& tuple) {
  for (Value v : tuple)
    if (v >= structure.size()) throw std::invalid_argument("tuple value outside the universe");
  if (tuple.size() < vars.size())
    throw std::invalid_argument("tuple shorter than the variable list");
  const logic::BoundFormula bound(formula, structure, vars);
  return bound.holds(std::span<const Value>(tuple.data(), vars.size()));
}

bool eval_formula(const logic::Structure& structure, const FormulaTree& formula,
                  const std::vector<Value>& tuple) {
  return eval_formula(structure, formula, logic::free_variables(formula), tuple);
}

std::size_t point_index(const std::vector<Value>& point, std::uint32_t p) {
  std::size_t index = 0;
  for (Value v : point) index = index * p + v;
  return index;
}

std::vector<Value> point_at(std::size_t index, std::size_t dimension, std::uint32_t p) {
  std::vector<Value> point(dimension);
  for (std::size_t i = dimension; i-- > 0;) {
    point[i] = static_cast<Value>(index % p);
    index /= p;
  }
  return point;
}

DefinableFamily definable_family(const FieldStructure& field, const FamilySpec& spec,
                                 std::size_t ground_cap) {
  const std::uint32_t p = field.characteristic();
  if (spec.x.empty() || spec.x.size() > kMaxDimension)
    throw std::invalid_argument("point dimension must lie in [1, " + std::to_string(kMaxDimension) +
                                "]");
  if (spec.e.size() != spec.z.size())
    throw std::invalid_argument("psi expects " + std::to_string(spec.z.size()) +
                                " parameters e, got " + std::to_string(spec.e.size()));
  const std::size_t ground = power(p, spec.x.size(), ground_cap, "ground set F_p^d");
  const std::size_t param_count = power(p, spec.y.size(), ground_cap, "parameter space F_p^|y|");

  std::vector<std::string> phi_vars = spec.x;
  phi_vars.insert(phi_vars.end(), spec.y.begin(), spec.y.end());
  std::vector<std::string> psi_vars = spec.y;
  psi_vars.insert(psi_vars.end(), spec.z.begin(), spec.z.end());
  const logic::BoundFormula phi(spec.phi, field, phi_vars);
  const logic::BoundFormula psi(spec.psi, field, psi_vars);

  DefinableFamily out{setfam::SetFamily(ground, {}), {}, p, spec.x.size(), false};
  std::vector<std::vector<setfam::Element>> members;
  std::vector<std::string> labels;
  std::vector<Value> psi_args(psi_vars.size());
  std::vector<Value> phi_args(phi_vars.size());
  std::copy(spec.e.begin(), spec.e.end(), psi_args.begin() + static_cast<long>(spec.y.size()));
  for (std::size_t b_index = 0; b_index < param_count; ++b_index) {
    const auto b = point_at(b_index, spec.y.size(), p);
    std::copy(b.begin(), b.end(), psi_args.begin());
    if (!psi.holds(psi_args)) continue;
    std::copy(b.begin(), b.end(), phi_args.begin() + static_cast<long>(spec.x.size()));
    std::vector<setfam::Element> member;
    for (std::size_t pt = 0; pt < ground; ++pt) {
      const auto a = point_at(pt, spec.x.size(), p);
      std::copy(a.begin(), a.end(), phi_args.begin());
      if (phi.holds(phi_args)) member.push_back(static_cast<setfam::Element>(pt));
    }
    members.push_back(std::move(member));
    std::string label = "(";
    for (std::size_t i = 0; i < b.size(); ++i) label += (i ? "," : "") + std::to_string(b[i]);
    labels.push_back(label + ")");
    out.parameters.push_back(b);
  }
  out.empty_parameter_set = members.empty();
  out.family = setfam::SetFamily(ground, std::move(members),
                                 labels.empty() ? std::vector<std::string>{} : std::move(labels));
  return out;
}

DimMeasFit dim_meas_fit(std::uint64_t count, std::uint64_t q, std::size_t max_dim,
                        const Rational& C, std::uint64_t den_cap) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (C <= 0) throw std::invalid_argument("the constant C must be positive");
  if (BigInt(count) > big_power(q, max_dim))
    throw std::invalid_argument("count exceeds q^max_dim");
  DimMeasFit fit;
  fit.constant = C;
  if (count == 0) {
    fit.within_bound = true;
    return fit;
  }
  // C / sqrt(q) from below, so any mu found satisfies the exact check
  const auto root_up = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(q)))) + 1;
  const Rational radius = C / Rational(BigInt(root_up));

  struct Candidate {
    std::size_t d;
    Rational mu;
    Rational residual;
    double score;
  };
  std::vector<Candidate> valid;
  for (std::size_t d = 0; d <= max_dim; ++d) {
    const Rational x = Rational(BigInt(count), big_power(q, d));
    const auto mu = simplest_positive(x - radius, x + radius, den_cap);
    if (!mu) continue;
    Rational residual = Rational(BigInt(count)) - *mu * Rational(big_power(q, d));
    if (residual < 0) residual = -residual;
    if (!within(residual, C, q, d)) continue;
    valid.push_back({d, *mu, residual, std::fabs(std::log(to_double(*mu)))});
  }
  if (valid.empty()) {
    // No d meets the bound: report the d whose ratio count/q^d is closest to 1.
    double best = 0;
    for (std::size_t d = 0; d <= max_dim; ++d) {
      const Rational x = Rational(BigInt(count), big_power(q, d));
      const double score = std::fabs(std::log(to_double(x)));
      if (d == 0 || score < best) {
        best = score;
        fit.d = d;
        fit.mu = simplest_positive(x - radius, x + radius, den_cap).value_or(x);
        fit.residual = Rational(BigInt(count)) - fit.mu * Rational(big_power(q, d));
        if (fit.residual < 0) fit.residual = -fit.residual;
      }
    }
    return fit;
  }
  const auto best = std::min_element(valid.begin(), valid.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.residual < b.residual;
  });
  fit.d = best->d;
  fit.mu = best->mu;
  fit.residual = best->residual;
  fit.within_bound = true;
  for (const auto& cand : valid) fit.valid_dimensions.push_back(cand.d);
  fit.ambiguous = valid.size() > 1;
  return fit;
}

Rational calibrate_constant(const std::vector<PointCount>& samples, std::size_t d,
                            const Rational& mu) {
  Rational C = 0;
  const BigInt grid = 1000;
  for (const auto& s : samples) {
    Rational residual = Rational(BigInt(s.count)) - mu * Rational(big_power(s.q, d));
    if (residual < 0) residual = -residual;
    // residual / q^(d - 1/2) = residual * sqrt(q) / q^d
    const double estimate = to_double(residual / Rational(big_power(s.q, d))) *
                            std::sqrt(static_cast<double>(s.q));
    Rational candidate = round_up(Rational(estimate), grid);
    while (!within(residual, candidate, s.q, d)) candidate += Rational(BigInt(1), grid);
    C = std::max(C, candidate);
  }
  return C;
}

FfFhpReport ff_fhp_experiment(const FieldStructure& field, const FamilySpec& spec, std::size_t k,
                              const Rational& alpha, std::size_t ground_cap) {
  const auto built = definable_family(field, spec, ground_cap);
  FfFhpReport report;
  report.q = built.q;
  report.dimension = built.dimension;
  report.members = built.family.size();
  report.ground = built.family.ground_size();
  report.empty_parameter_set = built.empty_parameter_set;
  if (!built.family.empty()) {
    report.fhp = setfam::check_fhp_instance(built.family, k, alpha);
  } else {
    report.fhp.k = k;
    report.fhp.alpha = alpha;
  }
  return report;
}

ColorfulFfReport colorful_ff_experiment(const FieldStructure& field,
                                        const std::vector<FamilySpec>& specs,
                                        const Rational& alpha, std::size_t ground_cap) {
  if (specs.empty()) throw std::invalid_argument("colorful experiment needs at least one family");
  std::vector<setfam::SetFamily> families;
  for (const auto& spec : specs) {
    auto built = definable_family(field, spec, ground_cap);
    if (!families.empty() && built.family.ground_size() != families.front().ground_size())
      throw std::invalid_argument("colorful families must share the point sort");
    if (built.family.empty()) throw std::invalid_argument("a colorful family has no members");
    families.push_back(std::move(built.family));
  }
  ColorfulFfReport report;
  report.q = field.characteristic();
  report.degenerate = families.size() == 1;
  report.colorful = setfam::colorful_check(families, alpha);
  for (const auto& family : families) {
    report.measure.push_back(setfam::measure_fhp_check(
        family, setfam::RationalWeights::uniform(family.size()), families.size(), alpha));
  }
  return report;
}

}  // namespace fhlab::pseudofield
