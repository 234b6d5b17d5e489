#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "reflectjoin/genlang/bytecode.hpp"
#include "reflectjoin/genlang/types.hpp"
#include "reflectjoin/meta.hpp"

namespace reflectjoin::genlang {

/// Executable binding of one class. Instances are either backed by a loaded
/// CompiledUnit or synthesized from a schema descriptor (tuple classes whose
/// data exists without generated code, e.g. input relation classes).
class ClassInfo {
 public:
  std::string name;
  std::vector<AttributeDescriptor> attributes;
  std::optional<std::string> interfaceName;
  std::shared_ptr<const CompiledUnit> unit;  // null for schema-backed classes

  struct RunMethod {
    const MethodCode* code = nullptr;
    MethodSig sig;
  };

  // Execution support, prepared at load time.
  std::vector<int64_t> poolInts;
  std::vector<std::string> poolTexts;          // sized once; views stay valid
  std::vector<std::string> poolClassNames;
  mutable std::vector<std::atomic<const ClassInfo*>> poolClassCache;
  std::vector<PoolEntry::Kind> poolKinds;
  std::vector<RunMethod> methods;
  std::map<std::string, int> methodIndex;

  const RunMethod* findMethod(const std::string& n) const;
};

using LoadedClass = std::shared_ptr<const ClassInfo>;

/// Name → loaded class map with schema fallback for resolution. Loading is
/// the only route to executability, and an already-bound name always wins
/// (reloading returns the existing binding).
class ClassRegistry {
 public:
  explicit ClassRegistry(const SchemaRegistry& schemas) : schemas_(schemas) {}

  /// Verifies, prepares and binds a unit. With resolve set, every class the
  /// unit references must already be resolvable (loaded or schema-backed),
  /// else ClassNotFound and the binding is rolled back.
  LoadedClass loadUnit(const CompiledUnit& unit, bool resolve);

  LoadedClass lookup(const std::string& name) const;  // throws ClassNotFound
  std::optional<LoadedClass> find(const std::string& name) const;
  bool isLoaded(const std::string& name) const;
  bool isKnown(const std::string& name) const;  // loaded or schema-backed

  /// Structure of a loaded class or registered schema, as a descriptor.
  std::optional<SchemaDescriptor> describe(const std::string& name) const;

  /// Executable identity for casts and tuple construction; interns a
  /// schema-backed ClassInfo on first use. Null when the name is unknown.
  const ClassInfo* resolveExecutable(const std::string& name) const;

  std::vector<std::string> loadedNames() const;
  size_t loadedCount() const;

  /// Rollback support for all-or-nothing compilation.
  void unbind(const std::string& name);

  const SchemaRegistry& schemas() const { return schemas_; }

 private:
  LoadedClass prepare(const CompiledUnit& unit) const;
  void resolveRefs(const ClassInfo& info) const;

  const SchemaRegistry& schemas_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, LoadedClass> classes_;
  mutable std::map<std::string, LoadedClass> schemaBacked_;
  // Unbound classes are parked here, not freed: resolved pool caches elsewhere
  // may still hold raw pointers to them.
  std::vector<LoadedClass> graveyard_;
};

}  // namespace reflectjoin::genlang
