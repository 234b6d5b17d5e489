#include "reflectjoin/genlang/typecheck.hpp"

#include <set>

#include "reflectjoin/error.hpp"

namespace reflectjoin::genlang {

const MethodSig* ClassShape::findStatic(const std::string& n) const {
  for (const auto& [name, sig] : statics) {
    if (name == n) return &sig;
  }
  return nullptr;
}

std::optional<int> ClassShape::attributeIndex(const std::string& n) const {
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == n) return static_cast<int>(i);
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void typeError(int line, const std::string& msg) {
  throw CompilationError(CompilationError::Phase::Type, line, msg);
}

}  // namespace

ClassShape shapeOf(const ClassDecl& decl) {
  ClassShape shape;
  shape.name = decl.name;
  shape.interfaceName = decl.implementsInterface;
  std::set<std::string> memberNames;
  for (const MethodDecl& m : decl.methods) {
    if (!memberNames.insert(m.name).second) {
      typeError(m.line, "duplicate member '" + m.name + "' in class " + decl.name);
    }
    if (m.isAccessor) {
      Domain d = m.returnType.kind == GlType::Kind::Int ? Domain::Int
                                                        : Domain::Text;
      shape.attributes.push_back({m.name, d});
    } else {
      MethodSig sig;
      sig.isAccessor = false;
      for (const Param& p : m.params) sig.params.push_back(p.type);
      sig.returnType = m.returnType;
      if (sig.returnType.kind == GlType::Kind::Void) {
        typeError(m.line, "method '" + m.name + "' has no value type");
      }
      shape.statics.emplace_back(m.name, std::move(sig));
    }
  }
  return shape;
}

void CompileEnv::addUnit(ClassShape shape) { units_.push_back(std::move(shape)); }

std::optional<ClassShape> CompileEnv::find(const std::string& name) const {
  for (const ClassShape& s : units_) {
    if (s.name == name) return s;
  }
  if (external_) return external_(name);
  return std::nullopt;
}

namespace {

class Checker {
 public:
  Checker(ClassDecl& cls, const CompileEnv& env)
      : cls_(cls), env_(env), selfShape_(shapeOf(cls)) {}

  void run() {
    if (cls_.implementsInterface) {
      auto iface = env_.find(*cls_.implementsInterface);
      if (!iface) {
        typeError(cls_.line,
                  "unknown interface '" + *cls_.implementsInterface + "'");
      }
      // Attribute layout must match the interface exactly so that accessor
      // indexes computed through the interface view stay valid.
      if (iface->attributes != selfShape_.attributes) {
        typeError(cls_.line, "class " + cls_.name +
                                 " does not match the attribute list of "
                                 "interface " +
                                 *cls_.implementsInterface);
      }
    }
    for (size_t i = 0; i < cls_.methods.size(); ++i) {
      if (!cls_.methods[i].isAccessor) checkMethod(cls_.methods[i]);
    }
  }

 private:
  ClassDecl& cls_;
  const CompileEnv& env_;
  ClassShape selfShape_;

  std::vector<std::map<std::string, std::pair<int, GlType>>> scopes_;
  int nextSlot_ = 0;
  GlType returnType_;

  std::optional<ClassShape> findClass(const std::string& name) const {
    if (name == selfShape_.name) return selfShape_;
    return env_.find(name);
  }

  void requireKnownClass(int line, const std::string& name) const {
    if (!findClass(name)) typeError(line, "unknown class '" + name + "'");
  }

  void checkMethod(MethodDecl& m) {
    scopes_.clear();
    scopes_.emplace_back();
    nextSlot_ = 0;
    returnType_ = m.returnType;
    checkValueType(m.line, m.returnType, "return type");
    for (const Param& p : m.params) {
      checkValueType(m.line, p.type, "parameter type");
      declare(m.line, p.name, p.type);
    }
    checkBlock(m.body);
    if (!blockReturns(m.body)) {
      typeError(m.line, "method '" + m.name + "' does not return on all paths");
    }
    m.localCount = nextSlot_;
  }

  void checkValueType(int line, const GlType& t, const char* what) const {
    if (t.kind == GlType::Kind::Void) typeError(line, std::string(what) + " is void");
    if (t.kind == GlType::Kind::Class || t.kind == GlType::Kind::Array) {
      requireKnownClass(line, t.className);
    }
  }

  int declare(int line, const std::string& name, const GlType& type) {
    for (const auto& scope : scopes_) {
      if (scope.count(name)) {
        typeError(line, "redeclaration of '" + name + "'");
      }
    }
    int slot = nextSlot_++;
    scopes_.back().emplace(name, std::make_pair(slot, type));
    return slot;
  }

  const std::pair<int, GlType>* lookupVar(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void checkBlock(std::vector<StmtPtr>& stmts) {
    scopes_.emplace_back();
    for (StmtPtr& s : stmts) checkStmt(*s);
    scopes_.pop_back();
  }

  static bool blockReturns(const std::vector<StmtPtr>& stmts) {
    for (const StmtPtr& s : stmts) {
      if (std::holds_alternative<ReturnStmt>(s->node)) return true;
    }
    return false;
  }

  void checkStmt(Stmt& stmt) {
    std::visit([&](auto& node) { checkStmtNode(stmt.line, node); }, stmt.node);
  }

  void checkStmtNode(int line, VarDeclStmt& s) {
    checkValueType(line, s.declared, "variable type");
    GlType init = checkExpr(*s.init);
    if (!assignable(s.declared, init)) {
      typeError(line, "cannot initialize " + s.declared.str() + " '" + s.name +
                          "' from " + init.str());
    }
    s.slot = declare(line, s.name, s.declared);
  }

  void checkStmtNode(int line, ForStmt& s) {
    GlType init = checkExpr(*s.init);
    if (init.kind != GlType::Kind::Int) {
      typeError(line, "loop initializer must be int");
    }
    scopes_.emplace_back();
    s.slot = declare(line, s.var, GlType::intType());
    GlType bound = checkExpr(*s.bound);
    if (bound.kind != GlType::Kind::Int) {
      typeError(line, "loop bound must be int");
    }
    checkBlock(s.body);
    scopes_.pop_back();
  }

  void checkStmtNode(int line, IfStmt& s) {
    GlType cond = checkExpr(*s.cond);
    if (cond.kind != GlType::Kind::Bool) {
      typeError(line, "if condition must be bool, got " + cond.str());
    }
    checkBlock(s.body);
  }

  void checkStmtNode(int line, ReturnStmt& s) {
    GlType v = checkExpr(*s.value);
    if (!assignable(returnType_, v)) {
      typeError(line, "cannot return " + v.str() + " from a method returning " +
                          returnType_.str());
    }
  }

  void checkStmtNode(int line, EmitStmt& s) {
    GlType v = checkExpr(*s.value);
    if (v.kind != GlType::Kind::Text) {
      typeError(line, "emit requires text, got " + v.str());
    }
  }

  void checkStmtNode(int line, AssignStmt& s) {
    GlType value = checkExpr(*s.value);
    if (auto* var = std::get_if<VarRef>(&s.target->node)) {
      const auto* slot = lookupVar(var->name);
      if (!slot) typeError(line, "unknown variable '" + var->name + "'");
      s.target->slot = slot->first;
      s.target->type = slot->second;
      if (!assignable(slot->second, value)) {
        typeError(line, "cannot assign " + value.str() + " to " +
                            slot->second.str() + " '" + var->name + "'");
      }
      return;
    }
    auto& ix = std::get<IndexExpr>(s.target->node);
    GlType arr = checkExpr(*ix.array);
    if (arr.kind != GlType::Kind::Array) {
      typeError(line, "indexed assignment target must be an array");
    }
    GlType idx = checkExpr(*ix.index);
    if (idx.kind != GlType::Kind::Int) typeError(line, "array index must be int");
    if (value != GlType::classType(arr.className)) {
      typeError(line, "cannot store " + value.str() + " into " + arr.str());
    }
    s.target->type = GlType::classType(arr.className);
  }

  void checkStmtNode(int, ExprStmt& s) { checkExpr(*s.expr); }

  GlType checkExpr(Expr& e) {
    e.type = std::visit([&](auto& node) { return checkExprNode(e, node); }, e.node);
    return e.type;
  }

  GlType checkExprNode(Expr&, IntLit&) { return GlType::intType(); }
  GlType checkExprNode(Expr&, TextLit&) { return GlType::textType(); }
  GlType checkExprNode(Expr&, BoolLit&) { return GlType::boolType(); }

  GlType checkExprNode(Expr& e, VarRef& v) {
    const auto* slot = lookupVar(v.name);
    if (!slot) typeError(e.line, "unknown variable '" + v.name + "'");
    e.slot = slot->first;
    return slot->second;
  }

  GlType checkExprNode(Expr& e, StaticCall& c) {
    const MethodSig* sig = selfShape_.findStatic(c.name);
    if (!sig) {
      typeError(e.line, "unknown method '" + c.name + "' in class " + cls_.name);
    }
    if (sig->params.size() != c.args.size()) {
      typeError(e.line, "method '" + c.name + "' expects " +
                            std::to_string(sig->params.size()) + " arguments, got " +
                            std::to_string(c.args.size()));
    }
    for (size_t i = 0; i < c.args.size(); ++i) {
      GlType arg = checkExpr(*c.args[i]);
      if (!assignable(sig->params[i], arg)) {
        typeError(c.args[i]->line,
                  "argument " + std::to_string(i + 1) + " of '" + c.name +
                      "': expected " + sig->params[i].str() + ", got " + arg.str());
      }
    }
    for (size_t i = 0; i < cls_.methods.size(); ++i) {
      if (cls_.methods[i].name == c.name) {
        e.methodIndex = static_cast<int>(i);
        break;
      }
    }
    return sig->returnType;
  }

  GlType checkExprNode(Expr& e, MemberCall& c) {
    GlType recv = checkExpr(*c.recv);
    if (recv.kind == GlType::Kind::Seq) {
      if (c.name == "add") {
        if (c.args.size() != 1) typeError(e.line, "seq add takes one argument");
        GlType v = checkExpr(*c.args[0]);
        if (v.kind == GlType::Kind::Void) {
          typeError(e.line, "cannot add a void value to a seq");
        }
        e.seqOp = SeqOp::Add;
        return GlType::voidType();
      }
      if (c.name == "size") {
        if (!c.args.empty()) typeError(e.line, "seq size takes no arguments");
        e.seqOp = SeqOp::Size;
        return GlType::intType();
      }
      if (c.name == "get") {
        if (c.args.size() != 1) typeError(e.line, "seq get takes one argument");
        if (checkExpr(*c.args[0]).kind != GlType::Kind::Int) {
          typeError(e.line, "seq index must be int");
        }
        e.seqOp = SeqOp::Get;
        return GlType::anyType();
      }
      typeError(e.line, "unknown seq method '" + c.name + "'");
    }
    if (recv.kind == GlType::Kind::Class) {
      auto shape = findClass(recv.className);
      if (!shape) typeError(e.line, "unknown class '" + recv.className + "'");
      auto idx = shape->attributeIndex(c.name);
      if (!idx) {
        typeError(e.line, "class " + recv.className + " has no attribute '" +
                              c.name + "'");
      }
      if (!c.args.empty()) {
        typeError(e.line, "attribute accessor '" + c.name + "' takes no arguments");
      }
      e.attrIndex = *idx;
      Domain d = shape->attributes[*idx].domain;
      return d == Domain::Int ? GlType::intType() : GlType::textType();
    }
    typeError(e.line, "cannot call '" + c.name + "' on " + recv.str());
  }

  GlType checkExprNode(Expr& e, ArrayLen& a) {
    GlType arr = checkExpr(*a.array);
    if (arr.kind != GlType::Kind::Array) {
      typeError(e.line, "'.length' requires an array, got " + arr.str());
    }
    return GlType::intType();
  }

  GlType checkExprNode(Expr& e, IndexExpr& ix) {
    GlType arr = checkExpr(*ix.array);
    if (arr.kind != GlType::Kind::Array) {
      typeError(e.line, "indexing requires an array, got " + arr.str());
    }
    if (checkExpr(*ix.index).kind != GlType::Kind::Int) {
      typeError(e.line, "array index must be int");
    }
    return GlType::classType(arr.className);
  }

  GlType checkExprNode(Expr& e, CastExpr& c) {
    GlType v = checkExpr(*c.value);
    if (v.kind != GlType::Kind::Any) {
      typeError(e.line, "cast requires an any operand, got " + v.str());
    }
    requireKnownClass(e.line, c.target.className);
    return c.target;
  }

  GlType checkExprNode(Expr& e, NewTupleExpr& c) {
    auto shape = findClass(c.className);
    if (!shape) typeError(e.line, "unknown class '" + c.className + "'");
    if (c.args.size() != shape->attributes.size()) {
      typeError(e.line, "constructor of " + c.className + " expects " +
                            std::to_string(shape->attributes.size()) +
                            " arguments, got " + std::to_string(c.args.size()));
    }
    for (size_t i = 0; i < c.args.size(); ++i) {
      GlType arg = checkExpr(*c.args[i]);
      GlType expect = shape->attributes[i].domain == Domain::Int
                          ? GlType::intType()
                          : GlType::textType();
      if (arg != expect) {
        typeError(c.args[i]->line,
                  "constructor argument " + std::to_string(i + 1) + " of " +
                      c.className + ": expected " + expect.str() + ", got " +
                      arg.str());
      }
    }
    return GlType::classType(c.className);
  }

  GlType checkExprNode(Expr& e, NewArrayExpr& a) {
    requireKnownClass(e.line, a.className);
    if (checkExpr(*a.size).kind != GlType::Kind::Int) {
      typeError(e.line, "array size must be int");
    }
    return GlType::arrayType(a.className);
  }

  GlType checkExprNode(Expr&, NewSeqExpr&) { return GlType::seqType(); }

  GlType checkExprNode(Expr& e, BinaryExpr& b) {
    GlType lhs = checkExpr(*b.lhs);
    GlType rhs = checkExpr(*b.rhs);
    switch (b.op) {
      case BinaryExpr::Op::Eq:
        if (lhs.kind == GlType::Kind::Int && rhs.kind == GlType::Kind::Int) {
          return GlType::boolType();
        }
        if (lhs.kind == GlType::Kind::Text && rhs.kind == GlType::Kind::Text) {
          return GlType::boolType();
        }
        typeError(e.line, "cannot compare " + lhs.str() + " with " + rhs.str());
      case BinaryExpr::Op::And:
        if (lhs.kind != GlType::Kind::Bool || rhs.kind != GlType::Kind::Bool) {
          typeError(e.line, "'&&' requires bool operands");
        }
        return GlType::boolType();
      case BinaryExpr::Op::Concat:
        if (lhs.kind != GlType::Kind::Text) {
          typeError(e.line, "'+' requires a text left operand, got " + lhs.str());
        }
        if (rhs.kind == GlType::Kind::Int) {
          e.rhsNeedsIntToText = true;
        } else if (rhs.kind != GlType::Kind::Text) {
          typeError(e.line, "'+' requires a text or int right operand, got " +
                                rhs.str());
        }
        return GlType::textType();
    }
    typeError(e.line, "bad binary operator");
  }
};

}  // namespace

void typecheck(ClassDecl& ast, const CompileEnv& env) {
  Checker(ast, env).run();
}

}  // namespace reflectjoin::genlang
