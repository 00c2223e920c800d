#include "fhlab/logic/structure.hpp"

#include <stdexcept>

namespace fhlab::logic {

Value Structure::add(Value, Value) const {
  throw std::invalid_argument("structure has no ring operations");
}
Value Structure::mul(Value, Value) const {
  throw std::invalid_argument("structure has no ring operations");
}
Value Structure::neg(Value) const {
  throw std::invalid_argument("structure has no ring operations");
}
std::optional<std::size_t> Structure::relation_id(const std::string&, std::size_t) const {
  return std::nullopt;
}
std::optional<std::size_t> Structure::function_id(const std::string&, std::size_t) const {
  return std::nullopt;
}
bool Structure::relation(std::size_t, std::span<const Value>) const {
  throw std::logic_error("structure has no relations");
}
Value Structure::function(std::size_t, std::span<const Value>) const {
  throw std::logic_error("structure has no functions");
}

FieldStructure::FieldStructure(std::uint32_t p) : p_(p) {
  if (p < 2 || p > kMaxCharacteristic)
    throw std::invalid_argument("field characteristic must lie in [2, " +
                                std::to_string(kMaxCharacteristic) + "]");
  for (Value a = 0; a < p; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0)
      throw std::invalid_argument("identity or negation fails in Z/" + std::to_string(p));
    bool invertible = a == 0;
    for (Value b = 0; b < p; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
        throw std::invalid_argument("commutativity fails in Z/" + std::to_string(p));
      if (mul(a, b) == 1) invertible = true;
      for (Value c = 0; c < p; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c)) || mul(mul(a, b), c) != mul(a, mul(b, c)) ||
            mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          throw std::invalid_argument("associativity or distributivity fails in Z/" +
                                      std::to_string(p));
      }
    }
    if (!invertible)
      throw std::invalid_argument(std::to_string(p) + " is not prime: " + std::to_string(a) +
                                  " has no inverse");
  }
}

Value FieldStructure::constant(std::int64_t literal) const {
  const std::int64_t r = literal % static_cast<std::int64_t>(p_);
  return static_cast<Value>(r < 0 ? r + p_ : r);
}

FiniteStructure::FiniteStructure(std::size_t universe, std::map<std::string, RelationTable> relations,
                                 std::map<std::string, FunctionTable> functions,
                                 std::vector<std::string> names)
    : universe_(universe), names_(std::move(names)) {
  if (universe_ == 0) throw std::invalid_argument("structure universe must be non-empty");
  if (!names_.empty() && names_.size() != universe_)
    throw std::invalid_argument("element names do not match the universe size");
  auto cells = [&](std::size_t arity) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= universe_;
    return n;
  };
  for (auto& [name, rel] : relations) {
    if (rel.table.size() != cells(rel.arity))
      throw std::invalid_argument("relation " + name + " table is not total on the universe");
    relation_names_.push_back(name);
    relation_tables_.push_back(std::move(rel));
  }
  for (auto& [name, fn] : functions) {
    if (fn.table.size() != cells(fn.arity))
      throw std::invalid_argument("function " + name + " table is not total on the universe");
    for (Value v : fn.table)
      if (v >= universe_) throw std::invalid_argument("function " + name + " leaves the universe");
    function_names_.push_back(name);
    function_tables_.push_back(std::move(fn));
  }
}

RelationTable FiniteStructure::relation_from_tuples(std::size_t universe, std::size_t arity,
                                                    const std::vector<std::vector<Value>>& tuples) {
  RelationTable rel;
  rel.arity = arity;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= universe;
  rel.table.assign(cells, false);
  for (const auto& tuple : tuples) {
    if (tuple.size() != arity) throw std::invalid_argument("relation tuple has the wrong arity");
    std::size_t off = 0;
    for (Value v : tuple) {
      if (v >= universe) throw std::invalid_argument("relation tuple leaves the universe");
      off = off * universe + v;
    }
    rel.table[off] = true;
  }
  return rel;
}

Value FiniteStructure::constant(std::int64_t literal) const {
  if (literal < 0 || static_cast<std::uint64_t>(literal) >= universe_)
    throw std::invalid_argument("constant " + std::to_string(literal) + " outside the universe");
  return static_cast<Value>(literal);
}

std::optional<std::size_t> FiniteStructure::relation_id(const std::string& name,
                                                        std::size_t arity) const {
  for (std::size_t i = 0; i < relation_names_.size(); ++i)
    if (relation_names_[i] == name && relation_tables_[i].arity == arity) return i;
  return std::nullopt;
}

std::optional<std::size_t> FiniteStructure::function_id(const std::string& name,
                                                        std::size_t arity) const {
  for (std::size_t i = 0; i < function_names_.size(); ++i)
    if (function_names_[i] == name && function_tables_[i].arity == arity) return i;
  return std::nullopt;
}

std::size_t FiniteStructure::offset(std::span<const Value> args) const {
  std::size_t off = 0;
  for (Value v : args) off = off * universe_ + v;
  return off;
}

bool FiniteStructure::relation(std::size_t id, std::span<const Value> args) const {
  return relation_tables_.at(id).table[offset(args)];
}

Value FiniteStructure::function(std::size_t id, std::span<const Value> args) const {
  return function_tables_.at(id).table[offset(args)];
}

std::map<std::string, RelationTable> FiniteStructure::relations() const {
  std::map<std::string, RelationTable> out;
  for (std::size_t i = 0; i < relation_names_.size(); ++i) out[relation_names_[i]] = relation_tables_[i];
  return out;
}

std::map<std::string, FunctionTable> FiniteStructure::functions() const {
  std::map<std::string, FunctionTable> out;
  for (std::size_t i = 0; i < function_names_.size(); ++i) out[function_names_[i]] = function_tables_[i];
  return out;
}

}  // namespace fhlab::logic
