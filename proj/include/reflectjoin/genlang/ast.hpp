#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reflectjoin/genlang/types.hpp"

namespace reflectjoin::genlang {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
  int64_t value;
};
struct TextLit {
  std::string value;
};
struct BoolLit {
  bool value;
};
struct VarRef {
  std::string name;
};
/// Unqualified call of a static method of the enclosing class.
struct StaticCall {
  std::string name;
  std::vector<ExprPtr> args;
};
/// `recv.name(args)`: tuple accessor or a growable-sequence method.
struct MemberCall {
  ExprPtr recv;
  std::string name;
  std::vector<ExprPtr> args;
};
struct ArrayLen {
  ExprPtr array;
};
struct IndexExpr {
  ExprPtr array;
  ExprPtr index;
};
/// Checked cast from Any to a class or class-array type.
struct CastExpr {
  GlType target;
  ExprPtr value;
};
struct NewTupleExpr {
  std::string className;
  std::vector<ExprPtr> args;
};
struct NewArrayExpr {
  std::string className;
  ExprPtr size;
};
struct NewSeqExpr {};
struct BinaryExpr {
  enum class Op : uint8_t { Eq, And, Concat };
  Op op;
  ExprPtr lhs;
  ExprPtr rhs;
};

enum class SeqOp : int8_t { None = -1, Add = 0, Size = 1, Get = 2 };

struct Expr {
  int line = 0;
  std::variant<IntLit, TextLit, BoolLit, VarRef, StaticCall, MemberCall,
               ArrayLen, IndexExpr, CastExpr, NewTupleExpr, NewArrayExpr,
               NewSeqExpr, BinaryExpr>
      node;

  // Filled in by the typechecker.
  GlType type;
  int slot = -1;         // VarRef
  int attrIndex = -1;    // MemberCall resolving to an attribute accessor
  SeqOp seqOp = SeqOp::None;
  int methodIndex = -1;  // StaticCall
  bool rhsNeedsIntToText = false;  // Concat with an int right operand
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarDeclStmt {
  GlType declared;
  std::string name;
  ExprPtr init;
  int slot = -1;
};
/// `for (int v = init; v < bound; v++) body` — the only loop form.
struct ForStmt {
  std::string var;
  ExprPtr init;
  ExprPtr bound;
  std::vector<StmtPtr> body;
  int slot = -1;
};
struct IfStmt {
  ExprPtr cond;
  std::vector<StmtPtr> body;
};
struct ReturnStmt {
  ExprPtr value;
};
struct EmitStmt {
  ExprPtr value;
};
struct AssignStmt {
  ExprPtr target;  // VarRef or IndexExpr
  ExprPtr value;
};
struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  int line = 0;
  std::variant<VarDeclStmt, ForStmt, IfStmt, ReturnStmt, EmitStmt, AssignStmt,
               ExprStmt>
      node;
};

struct Param {
  GlType type;
  std::string name;
};

struct MethodDecl {
  int line = 0;
  bool isStatic = false;
  /// Parameter-less attribute accessor declaration (`text name();`);
  /// body is implicit, return type is the attribute domain.
  bool isAccessor = false;
  std::string name;
  GlType returnType;
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  int localCount = 0;  // filled by the typechecker
};

struct ClassDecl {
  std::string name;
  std::optional<std::string> implementsInterface;
  std::vector<MethodDecl> methods;
  int line = 0;
};

using GenLangAst = ClassDecl;

}  // namespace reflectjoin::genlang
