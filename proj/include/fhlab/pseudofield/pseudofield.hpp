#pragma once

// Definable families over prime fields, counting-measure fits and the
// fractional Helly experiments run on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhlab/core/rational.hpp"
#include "fhlab/logic/formula.hpp"
#include "fhlab/logic/structure.hpp"
#include "fhlab/setfam/checks.hpp"

namespace fhlab::pseudofield {

using logic::FieldStructure;
using logic::FormulaTree;
using logic::Value;

inline constexpr std::size_t kDefaultGroundCap = 250'000;
inline constexpr std::size_t kMaxDimension = 3;

bool eval_formula(const logic::Structure& structure, const FormulaTree& formula,
                  const std::vector<std::string>& vars, const std::vector<Value>& tuple);
/// Variables taken in order of first occurrence.
bool eval_formula(const logic::Structure& structure, const FormulaTree& formula,
                  const std::vector<Value>& tuple);

/// F = { phi(M, b) : b in psi(M, e) } with phi(x; y) and psi(y; z).
struct FamilySpec {
  FormulaTree phi;
  std::vector<std::string> x;
  std::vector<std::string> y;
  FormulaTree psi;  // ["true"] for every parameter
  std::vector<std::string> z;
  std::vector<Value> e;
};

struct DefinableFamily {
  setfam::SetFamily family;
  std::vector<std::vector<Value>> parameters;  // b per member, lexicographic
  std::uint32_t q = 0;
  std::size_t dimension = 0;  // |x|
  bool empty_parameter_set = false;
};

/// Point (v_0..v_{d-1}) of F_p^d is ground element sum v_i p^(d-1-i).
std::size_t point_index(const std::vector<Value>& point, std::uint32_t p);
std::vector<Value> point_at(std::size_t index, std::size_t dimension, std::uint32_t p);

DefinableFamily definable_family(const FieldStructure& field, const FamilySpec& spec,
                                 std::size_t ground_cap = kDefaultGroundCap);

struct DimMeasFit {
  std::size_t d = 0;
  Rational mu;
  Rational residual;  // |count - mu q^d|
  Rational constant;  // the C the fit was judged against
  bool within_bound = false;
  bool ambiguous = false;
  std::vector<std::size_t> valid_dimensions;
};

/// For each d <= max_dim, mu is the simplest rational (denominator <= den_cap)
/// within C/sqrt(q) of count/q^d; d is valid when |count - mu q^d| <= C q^(d-1/2)
/// (checked exactly). Among valid d the one with mu closest to 1 in ratio wins,
/// ties going to the smaller residual. More than one valid d is flagged as
/// ambiguous. count = 0 gives (0, 0).
DimMeasFit dim_meas_fit(std::uint64_t count, std::uint64_t q, std::size_t max_dim,
                        const Rational& C = 1, std::uint64_t den_cap = 64);

struct PointCount {
  std::uint64_t q = 0;
  std::uint64_t count = 0;
};

/// Smallest C (rounded up to a multiple of 1/1000) with
/// |count - mu q^d| <= C q^(d-1/2) on every sample.
Rational calibrate_constant(const std::vector<PointCount>& samples, std::size_t d,
                            const Rational& mu);

struct FfFhpReport {
  setfam::FhpReport fhp;
  std::uint32_t q = 0;
  std::size_t dimension = 0;
  std::size_t members = 0;
  std::size_t ground = 0;
  bool empty_parameter_set = false;
};

/// Builds the definable family and runs check_fhp_instance; k = dimension + 1
/// is the guaranteed fractional Helly number.
FfFhpReport ff_fhp_experiment(const FieldStructure& field, const FamilySpec& spec, std::size_t k,
                              const Rational& alpha, std::size_t ground_cap = kDefaultGroundCap);

struct ColorfulFfReport {
  setfam::ColorfulReport colorful;
  std::vector<setfam::MeasureReport> measure;  // counting measure per family, d = #families
  std::uint32_t q = 0;
  bool degenerate = false;  // a single family: rainbow tuples are just members
};

ColorfulFfReport colorful_ff_experiment(const FieldStructure& field,
                                        const std::vector<FamilySpec>& specs,
                                        const Rational& alpha,
                                        std::size_t ground_cap = kDefaultGroundCap);

}  // namespace fhlab::pseudofield
