#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "reflectjoin/error.hpp"

namespace reflectjoin {

enum class Domain : uint8_t { Int, Text };

const char* domainName(Domain d);  // "int" / "text"

struct AttributeDescriptor {
  std::string name;
  Domain domain;

  bool operator==(const AttributeDescriptor&) const = default;
};

/// Runtime description of a tuple type: the attribute list in declaration
/// order plus an optional interface the type implements.
struct SchemaDescriptor {
  std::string className;
  std::vector<AttributeDescriptor> attributes;
  std::optional<std::string> implementsInterface;

  bool operator==(const SchemaDescriptor&) const = default;

  std::optional<int> attributeIndex(const std::string& name) const;
};

bool isIdentifier(const std::string& s);

/// Throws InvalidArgument if the descriptor violates its invariants
/// (identifier shape, duplicate attribute names).
void validateSchema(const SchemaDescriptor& d);

class SchemaRegistry {
 public:
  void registerSchema(const SchemaDescriptor& d);
  SchemaDescriptor lookupSchema(const std::string& name) const;
  std::optional<SchemaDescriptor> find(const std::string& name) const;
  bool contains(const std::string& name) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, SchemaDescriptor> schemas_;
};

/// Attributes whose (name, domain) occur in both schemas, in s1's declaration
/// order. A name shared with different domains is an IncompatibleDomains
/// error.
std::vector<AttributeDescriptor> commonAttributes(const SchemaDescriptor& s1,
                                                  const SchemaDescriptor& s2);

/// s1's attributes in order, then s2's non-common attributes in order.
std::vector<AttributeDescriptor> unionAttributes(const SchemaDescriptor& s1,
                                                 const SchemaDescriptor& s2);

// Schema declaration text format: `ClassName(attr:domain, ...)`,
// domain in {int, text}. Used by relation files and the CLI.
SchemaDescriptor parseSchemaDeclaration(const std::string& text);
std::string formatSchemaDeclaration(const SchemaDescriptor& d);

/// Canonical form used for cache keys and collision checks: the declaration
/// format without whitespace, plus an `implements` suffix when present.
std::string canonicalSchemaForm(const SchemaDescriptor& d);

uint64_t fnv1a64(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace reflectjoin
