#include "fhlab/io/json_io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fhlab/sqfint/arith.hpp"

namespace fhlab::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

namespace {

// Minimal scanner over already-validated JSON text.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {}

  std::optional<std::size_t> find(const std::vector<PathStep>& path) {
    skip_ws();
    for (const auto& step : path) {
      if (!descend(step)) return std::nullopt;
      skip_ws();
    }
    if (pos_ > text_.size()) return std::nullopt;
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_; ++i)
      if (text_[i] == '\n') ++line;
    return line;
  }

 private:
  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\r' || text_[pos_] == '\t'))
      ++pos_;
  }

  std::string_view read_string() {
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') pos_ += text_[pos_] == '\\' ? 2 : 1;
    const auto out = text_.substr(start, pos_ - start);
    ++pos_;
    return out;
  }

  void skip_value() {
    skip_ws();
    if (at('"')) {
      read_string();
    } else if (at('{') || at('[')) {
      const char close = at('{') ? '}' : ']';
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && !at(close)) {
        if (close == '}') {
          read_string();
          skip_ws();
          ++pos_;  // ':'
        }
        skip_value();
        skip_ws();
        if (at(',')) ++pos_;
        skip_ws();
      }
      ++pos_;
    } else {
      while (pos_ < text_.size() && !at(',') && !at(']') && !at('}') && !at(' ') && !at('\n') &&
             !at('\r') && !at('\t'))
        ++pos_;
    }
  }

  bool descend(const PathStep& step) {
    if (const auto* key = std::get_if<std::string>(&step)) {
      if (!at('{')) return false;
      ++pos_;
      skip_ws();
      while (at('"')) {
        const auto name = read_string();
        skip_ws();
        ++pos_;
        skip_ws();
        if (name == *key) return true;
        skip_value();
        skip_ws();
        if (!at(',')) return false;
        ++pos_;
        skip_ws();
      }
      return false;
    }
    const std::size_t index = std::get<std::size_t>(step);
    if (!at('[')) return false;
    ++pos_;
    skip_ws();
    for (std::size_t i = 0; i < index; ++i) {
      if (at(']')) return false;
      skip_value();
      skip_ws();
      if (!at(',')) return false;
      ++pos_;
      skip_ws();
    }
    return !at(']') && pos_ < text_.size();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

BigInt bigint_from_json(const Json& json) {
  if (json.is_number_unsigned()) return BigInt(json.get<std::uint64_t>());
  if (json.is_number_integer()) return BigInt(json.get<std::int64_t>());
  if (json.is_string()) {
    try {
      return BigInt(json.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("expected an integer, got " + json.dump());
}

template <typename T>
T get_or(const Json& json, const char* key, T fallback) {
  if (!json.contains(key)) return fallback;
  return json.at(key).get<T>();
}

}  // namespace

Json integer_to_json(const BigInt& v) {
  if (fits_int64(v)) return v.convert_to<std::int64_t>();
  return v.str();
}

std::optional<std::size_t> locate_line(std::string_view text, const std::vector<PathStep>& path) {
  return Locator(text).find(path);
}

Json rational_to_json(const Rational& value) {
  return Json{{"num", integer_to_json(boost::multiprecision::numerator(value))},
              {"den", integer_to_json(boost::multiprecision::denominator(value))}};
}

Rational rational_from_json(const Json& json) {
  if (json.is_object()) {
    if (!json.contains("num") || !json.contains("den"))
      throw InputError("rational object needs \"num\" and \"den\": " + json.dump());
    const BigInt den = bigint_from_json(json.at("den"));
    if (den == 0) throw InputError("rational with zero denominator: " + json.dump());
    return Rational(bigint_from_json(json.at("num")), den);
  }
  if (json.is_number_integer()) return Rational(bigint_from_json(json));
  if (json.is_string()) {
    try {
      return parse_rational(json.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("expected an exact rational (object, integer or string), got " + json.dump());
}

ParsedFamily parse_family_text(std::string_view text, const std::string& source) {
  const Json json = parse_json(text, source);
  auto fail = [&](const std::vector<PathStep>& path, const std::string& message) {
    const auto line = locate_line(text, path);
    return InputError(source + (line ? ":" + std::to_string(*line) : std::string()) + ": " +
                      message);
  };
  if (!json.is_object()) throw fail({}, "family must be a JSON object");
  if (!json.contains("ground")) throw fail({}, "missing \"ground\"");
  if (!json.at("ground").is_number_unsigned())
    throw fail({"ground"}, "\"ground\" must be a non-negative integer");
  const auto ground = json.at("ground").get<std::uint64_t>();
  if (ground > std::numeric_limits<setfam::Element>::max())
    throw fail({"ground"}, "ground size " + std::to_string(ground) + " is too large");
  if (!json.contains("sets")) throw fail({}, "missing \"sets\"");
  const Json& sets = json.at("sets");
  if (!sets.is_array()) throw fail({"sets"}, "\"sets\" must be an array of arrays");

  std::vector<std::vector<setfam::Element>> members;
  members.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Json& set = sets[i];
    if (!set.is_array())
      throw fail({"sets", i}, "set " + std::to_string(i) + " must be an array of integers");
    std::vector<setfam::Element> member;
    member.reserve(set.size());
    for (std::size_t j = 0; j < set.size(); ++j) {
      const Json& e = set[j];
      if (!e.is_number_integer())
        throw fail({"sets", i, j}, "set " + std::to_string(i) + " has non-integer element " +
                                       e.dump());
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= ground)
        throw fail({"sets", i, j}, "set " + std::to_string(i) + " contains element " + e.dump() +
                                       " outside ground set of size " + std::to_string(ground));
      member.push_back(static_cast<setfam::Element>(e.get<std::uint64_t>()));
    }
    members.push_back(std::move(member));
  }

  std::vector<std::string> labels;
  if (json.contains("labels") && !json.at("labels").is_null()) {
    const Json& raw = json.at("labels");
    if (!raw.is_array()) throw fail({"labels"}, "\"labels\" must be an array of strings");
    if (raw.size() != sets.size())
      throw fail({"labels"}, "family has " + std::to_string(sets.size()) + " sets but " +
                                 std::to_string(raw.size()) + " labels");
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!raw[i].is_string()) throw fail({"labels", i}, "label " + std::to_string(i) + " is not a string");
      labels.push_back(raw[i].get<std::string>());
    }
  }

  ParsedFamily out{setfam::SetFamily(ground, std::move(members), std::move(labels)), {}, nullptr};
  if (out.family.empty()) out.warnings.push_back(source + ": family has no sets");
  for (std::size_t i : out.family.empty_members())
    out.warnings.push_back(source + ": set " + std::to_string(i) + " is empty");
  if (json.contains("provenance")) out.provenance = json.at("provenance");
  return out;
}

ParsedFamily parse_family_file(const std::string& path) {
  return parse_family_text(read_file(path), path);
}

Json family_to_json(const setfam::SetFamily& family, const Json& provenance) {
  Json out{{"schema", kFamilySchema}, {"ground", family.ground_size()}};
  Json sets = Json::array();
  for (const auto& member : family.members()) sets.push_back(member);
  out["sets"] = std::move(sets);
  if (family.has_labels()) out["labels"] = family.labels();
  if (!provenance.is_null()) out["provenance"] = provenance;
  return out;
}

std::vector<std::string> string_list(const Json& json, const std::string& what) {
  if (json.is_string()) return {json.get<std::string>()};
  if (!json.is_array()) throw InputError(what + " must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& item : json) {
    if (!item.is_string()) throw InputError(what + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

logic::FiniteStructure structure_from_json(const Json& json) {
  if (!json.is_object()) throw InputError("structure must be a JSON object");
  std::vector<std::string> names;
  std::size_t universe = 0;
  if (json.contains("names")) {
    names = string_list(json.at("names"), "\"names\"");
    universe = names.size();
  }
  if (json.contains("universe")) {
    const auto size = json.at("universe").get<std::size_t>();
    if (!names.empty() && size != names.size())
      throw InputError("\"universe\" disagrees with the number of names");
    universe = size;
  }
  if (universe == 0) throw InputError("structure needs a positive \"universe\" or \"names\"");

  std::map<std::string, logic::RelationTable> relations;
  for (const auto& [name, spec] : get_or(json, "relations", Json::object()).items()) {
    const auto arity = spec.at("arity").get<std::size_t>();
    if (spec.contains("tuples")) {
      const auto tuples = spec.at("tuples").get<std::vector<std::vector<logic::Value>>>();
      for (const auto& t : tuples) {
        if (t.size() != arity)
          throw InputError("relation " + name + " has a tuple of the wrong arity");
        for (auto v : t)
          if (v >= universe) throw InputError("relation " + name + " mentions element " +
                                              std::to_string(v) + " outside the universe");
      }
      relations[name] = logic::FiniteStructure::relation_from_tuples(universe, arity, tuples);
      continue;
    }
    if (!spec.contains("bits"))
      throw InputError("relation " + name + " needs \"bits\" or \"tuples\"");
    logic::RelationTable table{arity, {}};
    const Json& bits = spec.at("bits");
    if (bits.is_string()) {
      for (char c : bits.get<std::string>()) {
        if (c != '0' && c != '1') throw InputError("relation " + name + " bits must be 0 or 1");
        table.table.push_back(c == '1');
      }
    } else {
      for (const auto& b : bits) {
        const auto v = b.get<int>();
        if (v != 0 && v != 1) throw InputError("relation " + name + " bits must be 0 or 1");
        table.table.push_back(v == 1);
      }
    }
    relations[name] = std::move(table);
  }
  std::map<std::string, logic::FunctionTable> functions;
  for (const auto& [name, spec] : get_or(json, "functions", Json::object()).items()) {
    functions[name] = logic::FunctionTable{spec.at("arity").get<std::size_t>(),
                                           spec.at("table").get<std::vector<logic::Value>>()};
  }
  try {
    return logic::FiniteStructure(universe, std::move(relations), std::move(functions),
                                  std::move(names));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json structure_to_json(const logic::FiniteStructure& structure) {
  Json out{{"universe", structure.size()}};
  if (!structure.names().empty()) out["names"] = structure.names();
  Json relations = Json::object();
  for (const auto& [name, rel] : structure.relations()) {
    std::string bits;
    bits.reserve(rel.table.size());
    for (bool b : rel.table) bits.push_back(b ? '1' : '0');
    relations[name] = Json{{"arity", rel.arity}, {"bits", bits}};
  }
  out["relations"] = std::move(relations);
  const auto functions = structure.functions();
  if (!functions.empty()) {
    Json fns = Json::object();
    for (const auto& [name, fn] : functions) fns[name] = Json{{"arity", fn.arity}, {"table", fn.table}};
    out["functions"] = std::move(fns);
  }
  return out;
}

namespace {

sqfint::LinearTerm term_from_json(const Json& json, const sqfint::SpecialFormula& formula) {
  sqfint::LinearTerm term;
  term.x = get_or<std::int64_t>(json, "x", 0);
  term.z = get_or(json, "z", std::vector<std::int64_t>(formula.s, 0));
  term.z_prime = get_or(json, "z_prime", std::vector<std::int64_t>(formula.s_prime, 0));
  term.constant = get_or<std::int64_t>(json, "const", 0);
  return term;
}

Json term_to_json(const sqfint::LinearTerm& term) {
  return Json{{"x", term.x}, {"z", term.z}, {"z_prime", term.z_prime}, {"const", term.constant}};
}

sqfint::PCondition condition_from_json(const Json& json, const sqfint::SpecialFormula& formula) {
  using Kind = sqfint::PCondition::Kind;
  if (!json.is_object() || json.size() == 0)
    throw InputError("p-condition must be an object, got " + json.dump());
  sqfint::PCondition cond;
  if (json.contains("notin")) {
    return sqfint::PCondition::atom(term_from_json(json.at("notin"), formula),
                                    json.at("level").get<unsigned>());
  }
  if (json.contains("not")) {
    cond.kind = Kind::negation;
    cond.children.push_back(condition_from_json(json.at("not"), formula));
    return cond;
  }
  const char* key = json.contains("and") ? "and" : json.contains("or") ? "or" : nullptr;
  if (key == nullptr) throw InputError("unknown p-condition " + json.dump());
  cond.kind = std::string(key) == "and" ? Kind::conjunction : Kind::disjunction;
  for (const auto& child : json.at(key)) cond.children.push_back(condition_from_json(child, formula));
  return cond;
}

Json condition_to_json(const sqfint::PCondition& cond) {
  using Kind = sqfint::PCondition::Kind;
  switch (cond.kind) {
    case Kind::not_in_u:
      return Json{{"notin", term_to_json(cond.term)}, {"level", cond.level}};
    case Kind::negation:
      return Json{{"not", condition_to_json(cond.children.at(0))}};
    case Kind::conjunction:
    case Kind::disjunction: {
      Json children = Json::array();
      for (const auto& c : cond.children) children.push_back(condition_to_json(c));
      return Json{{cond.kind == Kind::conjunction ? "and" : "or", children}};
    }
  }
  return nullptr;
}

}  // namespace

sqfint::SpecialFormula special_formula_from_json(const Json& json) {
  if (!json.is_object()) throw InputError("special formula must be a JSON object");
  sqfint::SpecialFormula formula;
  formula.k = get_or<std::int64_t>(json, "k", 1);
  formula.m = get_or<std::uint64_t>(json, "m", 1);
  formula.s = get_or<std::size_t>(json, "s", 0);
  formula.s_prime = get_or<std::size_t>(json, "s_prime", 0);
  for (const auto& [key, cond] : get_or(json, "theta", Json::object()).items()) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(key);
    } catch (const std::exception&) {
      throw InputError("theta key \"" + key + "\" is not a prime");
    }
    formula.theta[p] = condition_from_json(cond, formula);
  }
  try {
    formula.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return formula;
}

Json special_formula_to_json(const sqfint::SpecialFormula& formula) {
  Json theta = Json::object();
  for (const auto& [p, cond] : formula.theta) theta[std::to_string(p)] = condition_to_json(cond);
  return Json{{"k", formula.k},          {"m", formula.m}, {"s", formula.s},
              {"s_prime", formula.s_prime}, {"theta", theta}};
}

sqfint::GSystem gsystem_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("formula"))
    throw InputError("G-system must be an object with a \"formula\"");
  sqfint::GSystem system;
  system.formula = special_formula_from_json(json.at("formula"));
  system.c = get_or(json, "c", std::vector<std::int64_t>{});
  system.c_prime = get_or(json, "c_prime", std::vector<std::int64_t>{});
  try {
    system.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return system;
}

Json gsystem_to_json(const sqfint::GSystem& system) {
  return Json{{"formula", special_formula_to_json(system.formula)},
              {"c", system.c},
              {"c_prime", system.c_prime}};
}

pseudofield::FamilySpec family_spec_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("phi"))
    throw InputError("family spec must be an object with \"phi\"");
  pseudofield::FamilySpec spec;
  try {
    spec.phi = logic::parse_formula(json.at("phi"));
    spec.psi = json.contains("psi") ? logic::parse_formula(json.at("psi"))
                                    : logic::parse_formula(Json::array({"true"}));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  spec.x = string_list(json.at("x"), "\"x\"");
  spec.y = string_list(json.at("y"), "\"y\"");
  if (json.contains("z")) spec.z = string_list(json.at("z"), "\"z\"");
  spec.e = get_or(json, "e", std::vector<logic::Value>{});
  return spec;
}

}  // namespace fhlab::io
