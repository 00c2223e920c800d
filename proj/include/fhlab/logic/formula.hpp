#pragma once

// First-order formulas as prefix expression trees, bound to a structure for
// evaluation.
//
// JSON form: integers are literals, strings are variables, and arrays are
// applications: ["and", f...], ["or", f...], ["not", f], ["exists", "z", f],
// ["forall", "z", f], ["=", t, t], ["rel", "R", t...], ["true"], ["false"],
// ["+", t...], ["*", t...], ["-", t] (negation), ["-", t, t], ["const", c],
// ["var", "x"], ["fn", "f", t...].

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fhlab/logic/structure.hpp"

namespace fhlab::logic {

struct FormulaTree {
  enum class Kind {
    truth, falsity, conjunction, disjunction, negation, exists, forall, equals, relation,
    variable, literal, add, mul, neg, sub, function
  };
  Kind kind = Kind::truth;
  std::string name;  // variable, bound variable or symbol name
  std::int64_t literal = 0;
  std::vector<FormulaTree> children;

  [[nodiscard]] bool is_term() const;
  friend bool operator==(const FormulaTree&, const FormulaTree&) = default;
};

/// Throws std::invalid_argument naming the offending node.
FormulaTree parse_formula(const nlohmann::json& json);
FormulaTree parse_formula(std::string_view json_text);
inline FormulaTree parse_formula(const char* json_text) { return parse_formula(std::string_view(json_text)); }
nlohmann::json formula_to_json(const FormulaTree& tree);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const FormulaTree& tree);

/// A formula resolved against a structure, with free variables in a fixed order.
class BoundFormula {
 public:
  /// Throws on unbound variables, unknown symbols, or ring operations in a
  /// structure without them.
  BoundFormula(const FormulaTree& tree, const Structure& structure,
               std::vector<std::string> free_vars);

  [[nodiscard]] bool holds(std::span<const Value> assignment) const;
  [[nodiscard]] std::size_t arity() const { return free_.size(); }
  [[nodiscard]] const std::vector<std::string>& free_vars() const { return free_; }
  [[nodiscard]] const Structure& structure() const { return *structure_; }

 private:
  struct Node {
    FormulaTree::Kind kind;
    std::size_t slot = 0;  // variables and quantifiers
    std::size_t symbol = 0;
    Value constant = 0;
    std::vector<Node> children;
  };

  Node compile(const FormulaTree& tree, std::vector<std::pair<std::string, std::size_t>>& scope);
  bool eval(const Node& node, std::vector<Value>& env) const;
  Value term(const Node& node, std::vector<Value>& env) const;

  const Structure* structure_;
  std::vector<std::string> free_;
  std::size_t slots_ = 0;
  Node root_;
};

}  // namespace fhlab::logic
