#pragma once

// Finite first-order structures: prime fields with ring operations and
// arbitrary finite structures given by relation and function tables.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fhlab::logic {

using Value = std::uint32_t;

class Structure {
 public:
  virtual ~Structure() = default;

  [[nodiscard]] virtual std::size_t size() const = 0;
  /// Interpretation of an integer literal.
  [[nodiscard]] virtual Value constant(std::int64_t literal) const = 0;
  [[nodiscard]] virtual bool has_ring() const { return false; }
  [[nodiscard]] virtual Value add(Value a, Value b) const;
  [[nodiscard]] virtual Value mul(Value a, Value b) const;
  [[nodiscard]] virtual Value neg(Value a) const;

  /// Symbol id, or nullopt when the structure has no such symbol of that arity.
  [[nodiscard]] virtual std::optional<std::size_t> relation_id(const std::string& name,
                                                               std::size_t arity) const;
  [[nodiscard]] virtual std::optional<std::size_t> function_id(const std::string& name,
                                                               std::size_t arity) const;
  [[nodiscard]] virtual bool relation(std::size_t id, std::span<const Value> args) const;
  [[nodiscard]] virtual Value function(std::size_t id, std::span<const Value> args) const;
};

/// F_p for a prime p <= 61. Field axioms are verified exhaustively on construction.
class FieldStructure final : public Structure {
 public:
  static constexpr std::uint32_t kMaxCharacteristic = 61;

  explicit FieldStructure(std::uint32_t p);

  [[nodiscard]] std::uint32_t characteristic() const { return p_; }
  [[nodiscard]] std::size_t size() const override { return p_; }
  [[nodiscard]] Value constant(std::int64_t literal) const override;
  [[nodiscard]] bool has_ring() const override { return true; }
  [[nodiscard]] Value add(Value a, Value b) const override { return (a + b) % p_; }
  [[nodiscard]] Value mul(Value a, Value b) const override { return (a * b) % p_; }
  [[nodiscard]] Value neg(Value a) const override { return (p_ - a) % p_; }

 private:
  std::uint32_t p_;
};

struct RelationTable {
  std::size_t arity = 0;
  std::vector<bool> table;  // row-major over universe^arity
};

struct FunctionTable {
  std::size_t arity = 0;
  std::vector<Value> table;  // row-major over universe^arity
};

/// Universe {0..n-1} (optionally named) with named relations and functions.
/// Integer literals denote universe indices.
class FiniteStructure final : public Structure {
 public:
  FiniteStructure(std::size_t universe, std::map<std::string, RelationTable> relations,
                  std::map<std::string, FunctionTable> functions = {},
                  std::vector<std::string> names = {});

  /// Relation from an explicit tuple list.
  static RelationTable relation_from_tuples(std::size_t universe, std::size_t arity,
                                            const std::vector<std::vector<Value>>& tuples);

  [[nodiscard]] std::size_t size() const override { return universe_; }
  [[nodiscard]] Value constant(std::int64_t literal) const override;
  [[nodiscard]] std::optional<std::size_t> relation_id(const std::string& name,
                                                       std::size_t arity) const override;
  [[nodiscard]] std::optional<std::size_t> function_id(const std::string& name,
                                                       std::size_t arity) const override;
  [[nodiscard]] bool relation(std::size_t id, std::span<const Value> args) const override;
  [[nodiscard]] Value function(std::size_t id, std::span<const Value> args) const override;

  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::map<std::string, RelationTable> relations() const;
  [[nodiscard]] std::map<std::string, FunctionTable> functions() const;

 private:
  [[nodiscard]] std::size_t offset(std::span<const Value> args) const;

  std::size_t universe_;
  std::vector<std::string> relation_names_;  // sorted, parallel to relation_tables_
  std::vector<RelationTable> relation_tables_;
  std::vector<std::string> function_names_;
  std::vector<FunctionTable> function_tables_;
  std::vector<std::string> names_;
};

}  // namespace fhlab::logic
