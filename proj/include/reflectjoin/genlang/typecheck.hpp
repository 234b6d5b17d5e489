#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reflectjoin/genlang/ast.hpp"
#include "reflectjoin/meta.hpp"

namespace reflectjoin::genlang {

/// What the typechecker needs to know about a class: its attribute list (for
/// accessors, constructor calls and casts) and its static method signatures.
struct ClassShape {
  std::string name;
  std::optional<std::string> interfaceName;
  std::vector<AttributeDescriptor> attributes;
  std::vector<std::pair<std::string, MethodSig>> statics;

  const MethodSig* findStatic(const std::string& n) const;
  std::optional<int> attributeIndex(const std::string& n) const;
};

/// Derives a shape from a parsed class; structural problems (duplicate
/// members, bad accessor types) are CompilationError(Type).
ClassShape shapeOf(const ClassDecl& decl);

/// Union of the classes visible during one compilation: the units being
/// co-compiled plus whatever the external resolver (loaded classes, schema
/// registry) knows.
class CompileEnv {
 public:
  using Resolver = std::function<std::optional<ClassShape>(const std::string&)>;

  explicit CompileEnv(Resolver external) : external_(std::move(external)) {}

  void addUnit(ClassShape shape);
  std::optional<ClassShape> find(const std::string& name) const;

 private:
  std::vector<ClassShape> units_;
  Resolver external_;
};

/// Assigns a type to every expression, resolves slots/attribute indexes/
/// method indexes in place, and enforces the language's typing rules.
/// Throws CompilationError(Type).
void typecheck(ClassDecl& ast, const CompileEnv& env);

}  // namespace reflectjoin::genlang
