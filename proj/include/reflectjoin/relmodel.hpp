#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "reflectjoin/meta.hpp"

namespace reflectjoin {

/// Tagged attribute value; the tag must match the attribute's domain wherever
/// the value is stored in a tuple.
using Value = std::variant<int64_t, std::string>;

inline Domain valueDomain(const Value& v) {
  return v.index() == 0 ? Domain::Int : Domain::Text;
}

std::string valueToString(const Value& v);

struct Tuple {
  std::string schemaName;
  std::vector<Value> values;

  bool operator==(const Tuple&) const = default;
};

/// Schema-specific representation: an ordered array of tuples of one class.
struct TypedRelation {
  SchemaDescriptor schema;
  std::vector<Tuple> tuples;

  bool operator==(const TypedRelation&) const = default;
};

/// The single universal relation representation. Construction is the validity
/// gate: instances only exist validated.
class GenericRelation {
 public:
  GenericRelation(std::vector<std::string> attributeNames,
                  std::vector<Domain> attributeDomains,
                  std::vector<std::vector<Value>> rows);

  const std::vector<std::string>& attributeNames() const { return names_; }
  const std::vector<Domain>& attributeDomains() const { return domains_; }
  const std::vector<std::vector<Value>>& rows() const { return rows_; }

 private:
  std::vector<std::string> names_;
  std::vector<Domain> domains_;
  std::vector<std::vector<Value>> rows_;
};

/// Validates and constructs; InvalidRelation on duplicate names, arity
/// mismatch, or a value tag not matching its column domain.
GenericRelation makeGenericRelation(std::vector<std::string> names,
                                    std::vector<Domain> domains,
                                    std::vector<std::vector<Value>> rows);

// Relation file format: line 1 is a schema declaration, every further line a
// comma-separated row. TEXT fields are unquoted (no commas), INT is decimal.
TypedRelation loadRelation(const std::filesystem::path& path);
TypedRelation loadRelation(const std::filesystem::path& path,
                           const SchemaDescriptor& schema);
void writeRelationFile(const std::filesystem::path& path,
                       const TypedRelation& rel);

/// Builds a relation pair whose natural-join cardinality is exactly `target`.
/// Deterministic in `seed`; requires exactly one common INT attribute.
std::pair<TypedRelation, TypedRelation> synthesizeDataset(
    const SchemaDescriptor& s1, const SchemaDescriptor& s2, int64_t n1,
    int64_t n2, int64_t target, uint64_t seed);

GenericRelation toGeneric(const TypedRelation& r);
TypedRelation fromGeneric(const GenericRelation& g,
                          const SchemaDescriptor& schema);

}  // namespace reflectjoin
