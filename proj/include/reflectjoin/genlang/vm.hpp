#pragma once

#include <string>
#include <vector>

#include "reflectjoin/genlang/registry.hpp"
#include "reflectjoin/genlang/runtime_value.hpp"

namespace reflectjoin::genlang {

/// Executes a static method of a loaded class. Arguments are checked against
/// the method signature (ClassCastError on mismatch). Lines produced by
/// `emit` statements are appended to *emitOut when given, discarded
/// otherwise. Runtime errors are ClassCastError for failed checked casts and
/// VmFault for anything a verified, well-typed program cannot reach.
RuntimeValue invokeStatic(const ClassRegistry& registry, const LoadedClass& cls,
                          const std::string& method,
                          const std::vector<RuntimeValue>& args,
                          std::string* emitOut = nullptr);

/// Constructs a tuple of a loaded (or schema-backed) class from per-attribute
/// values; ArityError / DomainError on mismatch.
RuntimeValue instantiate(const LoadedClass& cls,
                         const std::vector<RuntimeValue>& args);

/// The engine-level analog of casting a relation value to a class or
/// interface view: succeeds when the element class is the target or
/// implements it, else ClassCastError.
RuntimeValue castRelation(const ClassRegistry& registry,
                          const RuntimeValue& relation,
                          const std::string& target);

}  // namespace reflectjoin::genlang
