#pragma once

// JSON encodings of families, structures, formulas and reports, plus the CSV
// flattening used by the command-line tool.
//
// Rationals are {"num": n, "den": d} in lowest terms. Components that do not
// fit in 64 bits are written as decimal strings.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fhlab/constructs/constructs.hpp"
#include "fhlab/core/rational.hpp"
#include "fhlab/fraclp/transversal.hpp"
#include "fhlab/logic/structure.hpp"
#include "fhlab/pseudofield/pseudofield.hpp"
#include "fhlab/setfam/checks.hpp"
#include "fhlab/sqfint/gsystem.hpp"
#include "fhlab/typecount/dividing.hpp"
#include "fhlab/typecount/types.hpp"
#include "fhlab/vc/shatter.hpp"

namespace fhlab::io {

using Json = nlohmann::json;

/// Malformed or schema-violating input. The message is ready to print.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kFamilySchema = "fhlab.family/1";

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::string& path, std::string_view content);

/// Parse errors carry the source name, line and column.
Json parse_json(std::string_view text, const std::string& source);

using PathStep = std::variant<std::string, std::size_t>;
/// 1-based line on which the value at `path` starts, if the path exists.
std::optional<std::size_t> locate_line(std::string_view text, const std::vector<PathStep>& path);

/// Integers outside the 64-bit range become decimal strings.
Json integer_to_json(const BigInt& value);
Json rational_to_json(const Rational& value);
/// Accepts {"num","den"}, an integer, or a string such as "3/4" or "0.25".
Rational rational_from_json(const Json& json);

struct ParsedFamily {
  setfam::SetFamily family;
  std::vector<std::string> warnings;
  Json provenance;  // null when absent
};

ParsedFamily parse_family_text(std::string_view text, const std::string& source);
ParsedFamily parse_family_file(const std::string& path);
Json family_to_json(const setfam::SetFamily& family, const Json& provenance = nullptr);

/// {"universe": n | "names": [...], "relations": {R: {"arity", "bits" | "tuples"}},
///  "functions": {f: {"arity", "table"}}}. Bits are a string of 0/1 or an array.
logic::FiniteStructure structure_from_json(const Json& json);
Json structure_to_json(const logic::FiniteStructure& structure);

/// Conditions: {"notin": term, "level": l}, {"and": [...]}, {"or": [...]},
/// {"not": cond}. Terms: {"x", "z", "z_prime", "const"}.
sqfint::SpecialFormula special_formula_from_json(const Json& json);
Json special_formula_to_json(const sqfint::SpecialFormula& formula);
sqfint::GSystem gsystem_from_json(const Json& json);
Json gsystem_to_json(const sqfint::GSystem& system);

/// {"phi", "x", "y", "psi"?, "z"?, "e"?}.
pseudofield::FamilySpec family_spec_from_json(const Json& json);

std::vector<std::string> string_list(const Json& json, const std::string& what);

Json to_json(const setfam::ConsReport& report);
Json to_json(const setfam::FhpReport& report);
Json to_json(const setfam::PkResult& result);
Json to_json(const setfam::ColorfulReport& report);
Json to_json(const setfam::MeasureReport& report);
Json to_json(const fraclp::IntersectionNumber& result);
Json to_json(const fraclp::TransversalResult& result);
Json to_json(const vc::DualShatter& dual);
Json to_json(const vc::ShatterReport& report);
Json to_json(const constructs::RainbowExtraction& extraction);
Json to_json(const sqfint::PSatisfiability& result);
Json to_json(const sqfint::DensityCertificate& certificate);
Json to_json(const sqfint::SqfFhpReport& report);
Json to_json(const sqfint::DicksonResult& result);
Json to_json(const pseudofield::DimMeasFit& fit);
Json to_json(const pseudofield::FfFhpReport& report);
Json to_json(const pseudofield::ColorfulFfReport& report);
Json to_json(const typecount::CountReport& report);
Json to_json(const typecount::PowerSavingReport& report);
Json to_json(const typecount::DividingResult& result);

/// Two-column CSV (path,value) of every scalar leaf. Rationals render as
/// "num/den"; array indices and object keys are joined with '.'.
std::string to_csv(const Json& json);

}  // namespace fhlab::io
