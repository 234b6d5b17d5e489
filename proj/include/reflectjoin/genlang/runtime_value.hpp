#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "reflectjoin/relmodel.hpp"

namespace reflectjoin::genlang {

/// Immutable runtime value as seen outside the VM: the arguments and results
/// of invokeStatic, natJoin and friends. Heap nodes are shared and
/// const, so values are cheap to copy and safe to share across threads.
class RuntimeValue {
 public:
  enum class Kind : uint8_t { Null, Int, Bool, Text, Tuple, Array, Seq };

  RuntimeValue() = default;

  static RuntimeValue ofInt(int64_t v);
  static RuntimeValue ofBool(bool v);
  static RuntimeValue ofText(std::string v);
  static RuntimeValue tuple(std::string className,
                            std::vector<RuntimeValue> fields);
  static RuntimeValue array(std::string elementClass,
                            std::vector<RuntimeValue> elements);
  static RuntimeValue seq(std::vector<RuntimeValue> elements);

  Kind kind() const;
  bool isRelation() const { return kind() == Kind::Array; }

  int64_t asInt() const;
  bool asBool() const;
  const std::string& asText() const;

  const std::string& tupleClass() const;
  const std::vector<RuntimeValue>& tupleFields() const;

  const std::string& arrayClass() const;
  const std::vector<RuntimeValue>& arrayElements() const;

  const std::vector<RuntimeValue>& seqElements() const;

  bool operator==(const RuntimeValue& other) const;

 private:
  struct TupleData {
    std::string className;
    std::vector<RuntimeValue> fields;
  };
  struct ArrayData {
    std::string elementClass;
    std::vector<RuntimeValue> elements;
  };
  struct SeqData {
    std::vector<RuntimeValue> elements;
  };

  std::variant<std::monostate, int64_t, bool,
               std::shared_ptr<const std::string>,
               std::shared_ptr<const TupleData>,
               std::shared_ptr<const ArrayData>, std::shared_ptr<const SeqData>>
      v_;
};

/// A typed relation as the VM sees it: an array of tuple objects whose class
/// name is the relation's schema name.
RuntimeValue relationToRuntime(const TypedRelation& rel);

/// Inverse of relationToRuntime; SchemaMismatch when the value's shape does
/// not match the schema.
TypedRelation runtimeToRelation(const RuntimeValue& value,
                                const SchemaDescriptor& schema);

/// Plain Value of one tuple attribute (Int/Text fields only).
Value attributeValue(const RuntimeValue& tuple, size_t index);

}  // namespace reflectjoin::genlang
