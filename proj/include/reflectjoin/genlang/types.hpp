#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reflectjoin::genlang {

/// GenLang's type lattice. `Any` is the generic boundary type: it is legal
/// only in parameter/return positions and as the operand of checked casts.
struct GlType {
  enum class Kind : uint8_t { Int, Text, Bool, Any, Seq, Class, Array, Void };

  Kind kind = Kind::Void;
  std::string className;  // Class and Array only

  static GlType intType() { return {Kind::Int, {}}; }
  static GlType textType() { return {Kind::Text, {}}; }
  static GlType boolType() { return {Kind::Bool, {}}; }
  static GlType anyType() { return {Kind::Any, {}}; }
  static GlType seqType() { return {Kind::Seq, {}}; }
  static GlType voidType() { return {Kind::Void, {}}; }
  static GlType classType(std::string name) {
    return {Kind::Class, std::move(name)};
  }
  static GlType arrayType(std::string name) {
    return {Kind::Array, std::move(name)};
  }

  bool operator==(const GlType&) const = default;

  std::string str() const;
};

/// True when a value of type `src` may flow into a slot of type `target`
/// without a cast: exact match, or widening to Any.
bool assignable(const GlType& target, const GlType& src);

struct MethodSig {
  bool isAccessor = false;  // parameter-less attribute accessor
  std::vector<GlType> params;
  GlType returnType;

  bool operator==(const MethodSig&) const = default;
};

// Signature strings: "S:(<params>)<ret>" for static methods,
// "A:(<self>)<ret>" for accessors; type codes I,T,B,A,Q,LName;,[LName;.
std::string encodeSignature(const MethodSig& sig);
MethodSig parseSignature(const std::string& s);  // throws ClassFormatError

}  // namespace reflectjoin::genlang
