#include "fhlab/logic/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace fhlab::logic {

namespace {

using Kind = FormulaTree::Kind;
using nlohmann::json;

struct OpName {
  const char* text;
  Kind kind;
};

constexpr OpName kOps[] = {
    {"true", Kind::truth},     {"false", Kind::falsity},   {"and", Kind::conjunction},
    {"or", Kind::disjunction}, {"not", Kind::negation},    {"exists", Kind::exists},
    {"forall", Kind::forall},  {"=", Kind::equals},        {"rel", Kind::relation},
    {"var", Kind::variable},   {"const", Kind::literal},   {"+", Kind::add},
    {"*", Kind::mul},          {"fn", Kind::function},
};

[[noreturn]] void fail(const json& node, const std::string& what) {
  throw std::invalid_argument("formula node " + node.dump() + ": " + what);
}

std::string expect_name(const json& node, const json& value) {
  if (!value.is_string()) fail(node, "expected a name");
  return value.get<std::string>();
}

FormulaTree parse_node(const json& node) {
  FormulaTree out;
  if (node.is_number_integer()) {
    out.kind = Kind::literal;
    out.literal = node.get<std::int64_t>();
    return out;
  }
  if (node.is_string()) {
    out.kind = Kind::variable;
    out.name = node.get<std::string>();
    return out;
  }
  if (!node.is_array() || node.empty() || !node[0].is_string())
    fail(node, "expected an integer, a variable name or [op, ...]");
  const std::string op = node[0].get<std::string>();
  const std::size_t argc = node.size() - 1;

  if (op == "-") {
    if (argc == 1) {
      out.kind = Kind::neg;
    } else if (argc == 2) {
      out.kind = Kind::sub;
    } else {
      fail(node, "'-' takes one or two arguments");
    }
    for (std::size_t i = 1; i < node.size(); ++i) out.children.push_back(parse_node(node[i]));
    return out;
  }
  const auto it = std::find_if(std::begin(kOps), std::end(kOps),
                               [&](const OpName& o) { return op == o.text; });
  if (it == std::end(kOps)) fail(node, "unknown operator '" + op + "'");
  out.kind = it->kind;
  std::size_t first_child = 1;
  switch (out.kind) {
    case Kind::truth:
    case Kind::falsity:
      if (argc != 0) fail(node, "takes no arguments");
      return out;
    case Kind::negation:
      if (argc != 1) fail(node, "'not' takes one argument");
      break;
    case Kind::exists:
    case Kind::forall:
      if (argc != 2) fail(node, "quantifiers take a variable and a body");
      out.name = expect_name(node, node[1]);
      first_child = 2;
      break;
    case Kind::equals:
      if (argc != 2) fail(node, "'=' takes two terms");
      break;
    case Kind::relation:
    case Kind::function:
      if (argc < 1) fail(node, "missing symbol name");
      out.name = expect_name(node, node[1]);
      first_child = 2;
      break;
    case Kind::variable:
      if (argc != 1) fail(node, "'var' takes one name");
      out.name = expect_name(node, node[1]);
      return out;
    case Kind::literal:
      if (argc != 1 || !node[1].is_number_integer()) fail(node, "'const' takes one integer");
      out.literal = node[1].get<std::int64_t>();
      return out;
    case Kind::add:
    case Kind::mul:
    case Kind::conjunction:
    case Kind::disjunction:
      if (argc == 0) fail(node, "needs at least one argument");
      break;
    default:
      break;
  }
  for (std::size_t i = first_child; i < node.size(); ++i) out.children.push_back(parse_node(node[i]));

  const bool wants_terms = out.kind == Kind::equals || out.kind == Kind::relation ||
                           out.kind == Kind::function || out.kind == Kind::add ||
                           out.kind == Kind::mul;
  for (const auto& child : out.children)
    if (child.is_term() != wants_terms)
      fail(node, wants_terms ? "expects terms, got a formula" : "expects formulas, got a term");
  return out;
}

void collect_free(const FormulaTree& tree, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  if (tree.kind == Kind::variable) {
    if (std::find(bound.begin(), bound.end(), tree.name) == bound.end() &&
        std::find(out.begin(), out.end(), tree.name) == out.end())
      out.push_back(tree.name);
    return;
  }
  const bool binds = tree.kind == Kind::exists || tree.kind == Kind::forall;
  if (binds) bound.push_back(tree.name);
  for (const auto& child : tree.children) collect_free(child, bound, out);
  if (binds) bound.pop_back();
}

}  // namespace

bool FormulaTree::is_term() const {
  switch (kind) {
    case Kind::variable:
    case Kind::literal:
    case Kind::add:
    case Kind::mul:
    case Kind::neg:
    case Kind::sub:
    case Kind::function:
      return true;
    default:
      return false;
  }
}

FormulaTree parse_formula(const json& node) {
  auto tree = parse_node(node);
  if (tree.is_term()) fail(node, "expected a formula, got a term");
  return tree;
}

FormulaTree parse_formula(std::string_view json_text) {
  return parse_formula(json::parse(json_text));
}

json formula_to_json(const FormulaTree& tree) {
  switch (tree.kind) {
    case Kind::variable:
      return tree.name;
    case Kind::literal:
      return tree.literal;
    default:
      break;
  }
  json out = json::array();
  if (tree.kind == Kind::neg || tree.kind == Kind::sub) {
    out.push_back("-");
  } else {
    const auto it = std::find_if(std::begin(kOps), std::end(kOps),
                                 [&](const OpName& o) { return o.kind == tree.kind; });
    out.push_back(it->text);
  }
  if (!tree.name.empty()) out.push_back(tree.name);
  for (const auto& child : tree.children) out.push_back(formula_to_json(child));
  return out;
}

std::vector<std::string> free_variables(const FormulaTree& tree) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_free(tree, bound, out);
  return out;
}

BoundFormula::BoundFormula(const FormulaTree& tree, const Structure& structure,
                           std::vector<std::string> free_vars)
    : structure_(&structure), free_(std::move(free_vars)) {
  if (tree.is_term()) throw std::invalid_argument("expected a formula, got a term");
  std::vector<std::pair<std::string, std::size_t>> scope;
  for (const auto& name : free_) scope.emplace_back(name, slots_++);
  root_ = compile(tree, scope);
}

BoundFormula::Node BoundFormula::compile(const FormulaTree& tree,
                                         std::vector<std::pair<std::string, std::size_t>>& scope) {
  Node node;
  node.kind = tree.kind;
  switch (tree.kind) {
    case Kind::variable: {
      const auto it = std::find_if(scope.rbegin(), scope.rend(),
                                   [&](const auto& entry) { return entry.first == tree.name; });
      if (it == scope.rend()) throw std::invalid_argument("unbound variable '" + tree.name + "'");
      node.slot = it->second;
      return node;
    }
    case Kind::literal:
      node.constant = structure_->constant(tree.literal);
      return node;
    case Kind::add:
    case Kind::mul:
    case Kind::neg:
    case Kind::sub:
      if (!structure_->has_ring())
        throw std::invalid_argument("ring operation used in a structure without ring operations");
      break;
    case Kind::relation: {
      const auto id = structure_->relation_id(tree.name, tree.children.size());
      if (!id)
        throw std::invalid_argument("unknown relation " + tree.name + "/" +
                                    std::to_string(tree.children.size()));
      node.symbol = *id;
      break;
    }
    case Kind::function: {
      const auto id = structure_->function_id(tree.name, tree.children.size());
      if (!id)
        throw std::invalid_argument("unknown function " + tree.name + "/" +
                                    std::to_string(tree.children.size()));
      node.symbol = *id;
      break;
    }
    case Kind::exists:
    case Kind::forall: {
      node.slot = slots_++;
      scope.emplace_back(tree.name, node.slot);
      node.children.push_back(compile(tree.children.at(0), scope));
      scope.pop_back();
      return node;
    }
    default:
      break;
  }
  for (const auto& child : tree.children) node.children.push_back(compile(child, scope));
  return node;
}

bool BoundFormula::holds(std::span<const Value> assignment) const {
  if (assignment.size() != free_.size())
    throw std::invalid_argument("formula expects " + std::to_string(free_.size()) +
                                " values, got " + std::to_string(assignment.size()));
  std::vector<Value> env(slots_);
  std::copy(assignment.begin(), assignment.end(), env.begin());
  return eval(root_, env);
}

bool BoundFormula::eval(const Node& node, std::vector<Value>& env) const {
  switch (node.kind) {
    case Kind::truth:
      return true;
    case Kind::falsity:
      return false;
    case Kind::conjunction:
      for (const auto& child : node.children)
        if (!eval(child, env)) return false;
      return true;
    case Kind::disjunction:
      for (const auto& child : node.children)
        if (eval(child, env)) return true;
      return false;
    case Kind::negation:
      return !eval(node.children[0], env);
    case Kind::exists:
    case Kind::forall: {
      const bool want = node.kind == Kind::exists;
      for (Value v = 0; v < structure_->size(); ++v) {
        env[node.slot] = v;
        if (eval(node.children[0], env) == want) return want;
      }
      return !want;
    }
    case Kind::equals:
      return term(node.children[0], env) == term(node.children[1], env);
    case Kind::relation: {
      std::vector<Value> args;
      args.reserve(node.children.size());
      for (const auto& child : node.children) args.push_back(term(child, env));
      return structure_->relation(node.symbol, args);
    }
    default:
      throw std::logic_error("term evaluated as a formula");
  }
}

Value BoundFormula::term(const Node& node, std::vector<Value>& env) const {
  switch (node.kind) {
    case Kind::variable:
      return env[node.slot];
    case Kind::literal:
      return node.constant;
    case Kind::add: {
      Value acc = term(node.children[0], env);
      for (std::size_t i = 1; i < node.children.size(); ++i)
        acc = structure_->add(acc, term(node.children[i], env));
      return acc;
    }
    case Kind::mul: {
      Value acc = term(node.children[0], env);
      for (std::size_t i = 1; i < node.children.size(); ++i)
        acc = structure_->mul(acc, term(node.children[i], env));
      return acc;
    }
    case Kind::neg:
      return structure_->neg(term(node.children[0], env));
    case Kind::sub:
      return structure_->add(term(node.children[0], env),
                             structure_->neg(term(node.children[1], env)));
    case Kind::function: {
      std::vector<Value> args;
      args.reserve(node.children.size());
      for (const auto& child : node.children) args.push_back(term(child, env));
      return structure_->function(node.symbol, args);
    }
    default:
      throw std::logic_error("formula evaluated as a term");
  }
}

}  // namespace fhlab::logic
