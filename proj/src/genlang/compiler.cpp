#include "reflectjoin/genlang/compiler.hpp"

#include <fstream>
#include <set>

#include "reflectjoin/error.hpp"
#include "reflectjoin/genlang/parser.hpp"
#include "reflectjoin/genlang/typecheck.hpp"
#include "reflectjoin/genlang/unit_io.hpp"
#include "reflectjoin/genlang/verifier.hpp"

namespace reflectjoin::genlang {

namespace {

[[noreturn]] void typeError(int line, const std::string& msg) {
  throw CompilationError(CompilationError::Phase::Type, line, msg);
}

class PoolBuilder {
 public:
  uint16_t internInt(int64_t v) {
    return intern({PoolEntry::Kind::Int, v, {}});
  }
  uint16_t internText(const std::string& s) {
    return intern({PoolEntry::Kind::Text, 0, s});
  }
  uint16_t internClass(const std::string& name) {
    return intern({PoolEntry::Kind::ClassRef, 0, name});
  }

  std::vector<PoolEntry> take() { return std::move(entries_); }

 private:
  uint16_t intern(PoolEntry e) {
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] == e) return static_cast<uint16_t>(i);
    }
    if (entries_.size() >= 65535) {
      typeError(0, "constant pool overflow");
    }
    entries_.push_back(std::move(e));
    return static_cast<uint16_t>(entries_.size() - 1);
  }

  std::vector<PoolEntry> entries_;
};

class MethodEmitter {
 public:
  MethodEmitter(PoolBuilder& pool, const MethodDecl& method)
      : pool_(pool), method_(method) {}

  MethodCode emit() {
    MethodSig sig;
    sig.isAccessor = false;
    for (const Param& p : method_.params) sig.params.push_back(p.type);
    sig.returnType = method_.returnType;
    emitStmts(method_.body);

    MethodCode out;
    out.name = method_.name;
    out.signature = encodeSignature(sig);
    out.maxStack = static_cast<uint16_t>(std::max(max_, 1));
    out.maxLocals = static_cast<uint16_t>(std::max(method_.localCount, 1));
    out.code = std::move(code_);
    return out;
  }

 private:
  PoolBuilder& pool_;
  const MethodDecl& method_;
  std::vector<uint8_t> code_;
  int cur_ = 0;
  int max_ = 0;

  void byte(uint8_t b) {
    if (code_.size() >= 65535) {
      typeError(method_.line, "method body too large");
    }
    code_.push_back(b);
  }
  void u16at(size_t pos, uint16_t v) {
    code_[pos] = static_cast<uint8_t>(v >> 8);
    code_[pos + 1] = static_cast<uint8_t>(v & 0xff);
  }
  void u16(uint16_t v) {
    byte(static_cast<uint8_t>(v >> 8));
    byte(static_cast<uint8_t>(v & 0xff));
  }
  void adjust(int delta) {
    cur_ += delta;
    if (cur_ > max_) max_ = cur_;
  }
  void op0(Op o, int delta) {
    byte(static_cast<uint8_t>(o));
    adjust(delta);
  }
  void op16(Op o, uint16_t operand, int delta) {
    byte(static_cast<uint8_t>(o));
    u16(operand);
    adjust(delta);
  }
  size_t here() const { return code_.size(); }

  // Emits a jump whose target is patched later; returns the operand offset.
  size_t jump(Op o, int delta) {
    byte(static_cast<uint8_t>(o));
    size_t at = here();
    u16(0);
    adjust(delta);
    return at;
  }

  void emitStmts(const std::vector<StmtPtr>& stmts) {
    for (const StmtPtr& s : stmts) {
      std::visit([&](const auto& node) { emitStmt(node); }, s->node);
    }
  }

  void emitStmt(const VarDeclStmt& s) {
    emitExpr(*s.init);
    op16(Op::Store, static_cast<uint16_t>(s.slot), -1);
  }

  void emitStmt(const ForStmt& s) {
    emitExpr(*s.init);
    op16(Op::Store, static_cast<uint16_t>(s.slot), -1);
    size_t loopTop = here();
    size_t exitFixup;
    if (const auto* boundVar = std::get_if<VarRef>(&s.bound->node)) {
      // Both comparands are locals: use the fused compare-and-branch.
      byte(static_cast<uint8_t>(Op::JmpIfGe));
      u16(static_cast<uint16_t>(s.slot));
      u16(static_cast<uint16_t>(s.bound->slot));
      exitFixup = here();
      u16(0);
      (void)boundVar;
    } else {
      op16(Op::Load, static_cast<uint16_t>(s.slot), +1);
      emitExpr(*s.bound);
      op0(Op::LtInt, -1);
      exitFixup = jump(Op::JmpIfFalse, -1);
    }
    emitStmts(s.body);
    byte(static_cast<uint8_t>(Op::IncJmp));
    u16(static_cast<uint16_t>(s.slot));
    u16(static_cast<uint16_t>(loopTop));
    u16at(exitFixup, static_cast<uint16_t>(here()));
  }

  void emitStmt(const IfStmt& s) {
    emitExpr(*s.cond);
    size_t fixup = jump(Op::JmpIfFalse, -1);
    emitStmts(s.body);
    u16at(fixup, static_cast<uint16_t>(here()));
  }

  void emitStmt(const ReturnStmt& s) {
    emitExpr(*s.value);
    op0(Op::RetVal, -1);
  }

  void emitStmt(const EmitStmt& s) {
    emitExpr(*s.value);
    op0(Op::EmitLine, -1);
  }

  void emitStmt(const AssignStmt& s) {
    if (const auto* var = std::get_if<VarRef>(&s.target->node)) {
      (void)var;
      emitExpr(*s.value);
      op16(Op::Store, static_cast<uint16_t>(s.target->slot), -1);
      return;
    }
    const auto& ix = std::get<IndexExpr>(s.target->node);
    emitExpr(*ix.array);
    emitExpr(*ix.index);
    emitExpr(*s.value);
    op0(Op::ArrayStore, -3);
  }

  void emitStmt(const ExprStmt& s) {
    emitExpr(*s.expr);
    if (s.expr->type.kind != GlType::Kind::Void) op0(Op::Pop, -1);
  }

  void emitExpr(const Expr& e) {
    std::visit([&](const auto& node) { emitExprNode(e, node); }, e.node);
  }

  void emitExprNode(const Expr&, const IntLit& n) {
    op16(Op::PushInt, pool_.internInt(n.value), +1);
  }
  void emitExprNode(const Expr&, const TextLit& n) {
    op16(Op::PushText, pool_.internText(n.value), +1);
  }
  void emitExprNode(const Expr&, const BoolLit& n) {
    op0(n.value ? Op::PushTrue : Op::PushFalse, +1);
  }
  void emitExprNode(const Expr& e, const VarRef&) {
    op16(Op::Load, static_cast<uint16_t>(e.slot), +1);
  }
  void emitExprNode(const Expr& e, const StaticCall& c) {
    for (const ExprPtr& a : c.args) emitExpr(*a);
    op16(Op::Call, static_cast<uint16_t>(e.methodIndex),
         -static_cast<int>(c.args.size()) + 1);
  }
  void emitExprNode(const Expr& e, const MemberCall& c) {
    emitExpr(*c.recv);
    switch (e.seqOp) {
      case SeqOp::Add:
        emitExpr(*c.args[0]);
        op0(Op::SeqAdd, -2);
        return;
      case SeqOp::Size:
        op0(Op::SeqSize, 0);
        return;
      case SeqOp::Get:
        emitExpr(*c.args[0]);
        op0(Op::SeqGet, -1);
        return;
      case SeqOp::None:
        op16(Op::GetAttr, static_cast<uint16_t>(e.attrIndex), 0);
        return;
    }
  }
  void emitExprNode(const Expr&, const ArrayLen& n) {
    emitExpr(*n.array);
    op0(Op::ArrayLen, 0);
  }
  void emitExprNode(const Expr&, const IndexExpr& n) {
    emitExpr(*n.array);
    emitExpr(*n.index);
    op0(Op::ArrayLoad, -1);
  }
  void emitExprNode(const Expr&, const CastExpr& n) {
    emitExpr(*n.value);
    bool isArray = n.target.kind == GlType::Kind::Array;
    op16(isArray ? Op::CastArray : Op::CastTuple,
         pool_.internClass(n.target.className), 0);
  }
  void emitExprNode(const Expr&, const NewTupleExpr& n) {
    for (const ExprPtr& a : n.args) emitExpr(*a);
    byte(static_cast<uint8_t>(Op::NewTuple));
    u16(pool_.internClass(n.className));
    byte(static_cast<uint8_t>(n.args.size()));
    adjust(-static_cast<int>(n.args.size()) + 1);
  }
  void emitExprNode(const Expr&, const NewArrayExpr& n) {
    emitExpr(*n.size);
    op16(Op::NewArray, pool_.internClass(n.className), 0);
  }
  void emitExprNode(const Expr&, const NewSeqExpr&) { op0(Op::NewSeq, +1); }
  void emitExprNode(const Expr& e, const BinaryExpr& b) {
    emitExpr(*b.lhs);
    emitExpr(*b.rhs);
    switch (b.op) {
      case BinaryExpr::Op::Eq:
        op0(b.lhs->type.kind == GlType::Kind::Int ? Op::EqInt : Op::EqText, -1);
        return;
      case BinaryExpr::Op::And:
        op0(Op::And, -1);
        return;
      case BinaryExpr::Op::Concat:
        if (e.rhsNeedsIntToText) op0(Op::IntToText, 0);
        op0(Op::Concat, -1);
        return;
    }
  }

  friend class UnitEmitter;
};

uint64_t unitFingerprint(const ClassShape& shape) {
  std::string canon = "class|" + shape.name + "|" +
                      (shape.interfaceName ? *shape.interfaceName : "-") + "|";
  for (const auto& a : shape.attributes) {
    canon += a.name;
    canon += ':';
    canon += domainName(a.domain);
    canon += ',';
  }
  return fnv1a64(canon);
}

CompiledUnit emitUnit(const ClassDecl& decl, const ClassShape& shape) {
  CompiledUnit unit;
  unit.className = decl.name;
  unit.interfaceName = decl.implementsInterface;
  unit.schemaFingerprint = unitFingerprint(shape);

  PoolBuilder pool;
  int attrIndex = 0;
  for (const MethodDecl& m : decl.methods) {
    if (m.isAccessor) {
      MethodSig sig;
      sig.isAccessor = true;
      sig.params.push_back(GlType::classType(decl.name));
      sig.returnType = m.returnType;
      MethodCode code;
      code.name = m.name;
      code.signature = encodeSignature(sig);
      code.maxStack = 1;
      code.maxLocals = 1;
      code.code = {static_cast<uint8_t>(Op::Load), 0, 0,
                   static_cast<uint8_t>(Op::GetAttr),
                   static_cast<uint8_t>(attrIndex >> 8),
                   static_cast<uint8_t>(attrIndex & 0xff),
                   static_cast<uint8_t>(Op::RetVal)};
      unit.methods.push_back(std::move(code));
      ++attrIndex;
    } else {
      MethodEmitter em(pool, m);
      unit.methods.push_back(em.emit());
    }
  }
  unit.pool = pool.take();
  return unit;
}

CompileEnv::Resolver resolverFor(const ClassRegistry& registry) {
  return [&registry](const std::string& name) -> std::optional<ClassShape> {
    auto desc = registry.describe(name);
    if (!desc) return std::nullopt;
    ClassShape shape;
    shape.name = desc->className;
    shape.interfaceName = desc->implementsInterface;
    shape.attributes = desc->attributes;
    return shape;
  };
}

// Shared load phase: verify, bind, then resolve the whole batch; unwinds the
// registry on any failure so no partial set of classes remains.
std::vector<LoadedClass> loadBatch(const std::vector<CompiledUnit>& units,
                                   ClassRegistry& registry) {
  std::vector<std::string> added;
  std::vector<LoadedClass> loaded;
  try {
    for (const CompiledUnit& u : units) {
      bool fresh = !registry.isLoaded(u.className);
      loaded.push_back(registry.loadUnit(u, /*resolve=*/false));
      if (fresh) added.push_back(u.className);
    }
    for (const CompiledUnit& u : units) {
      registry.lookup(u.className);
      // Resolution of references happens against the now-complete batch.
      registry.loadUnit(u, /*resolve=*/true);
    }
  } catch (const Error& e) {
    for (const std::string& name : added) registry.unbind(name);
    if (e.kind() == ErrorKind::Compilation) throw;
    throw CompilationError(CompilationError::Phase::Type, 0, e.what());
  }
  return loaded;
}

}  // namespace

std::vector<CompiledUnit> compileToBytes(const std::vector<std::string>& names,
                                         const std::vector<std::string>& defns,
                                         const ClassRegistry& registry) {
  if (names.size() != defns.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "compileToBytes: name/definition count mismatch");
  }
  std::vector<ClassDecl> decls;
  decls.reserve(names.size());
  std::set<std::string> seen;
  for (size_t i = 0; i < names.size(); ++i) {
    decls.push_back(parse(SourceUnit{names[i], defns[i]}));
    if (!seen.insert(names[i]).second) {
      typeError(0, "duplicate class '" + names[i] + "' in compilation batch");
    }
  }
  CompileEnv env(resolverFor(registry));
  std::vector<ClassShape> shapes;
  shapes.reserve(decls.size());
  for (const ClassDecl& d : decls) {
    shapes.push_back(shapeOf(d));
    env.addUnit(shapes.back());
  }
  std::vector<CompiledUnit> units;
  units.reserve(decls.size());
  for (size_t i = 0; i < decls.size(); ++i) {
    typecheck(decls[i], env);
    units.push_back(emitUnit(decls[i], shapes[i]));
  }
  return units;
}

std::vector<LoadedClass> compileClasses(const std::vector<std::string>& names,
                                        const std::vector<std::string>& defns,
                                        ClassRegistry& registry) {
  std::vector<CompiledUnit> units = compileToBytes(names, defns, registry);
  return loadBatch(units, registry);
}

std::vector<LoadedClass> compileClassesViaFiles(
    const std::vector<std::string>& names,
    const std::vector<std::string>& defns, ClassRegistry& registry,
    const std::filesystem::path& dir) {
  std::vector<CompiledUnit> units = compileToBytes(names, defns, registry);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::vector<CompiledUnit> reread;
  for (const CompiledUnit& u : units) {
    std::filesystem::path file = dir / (u.className + ".rjbc");
    std::vector<uint8_t> bytes = writeUnit(u);
    {
      std::ofstream out(file, std::ios::binary);
      if (!out) throw Error(ErrorKind::IoError, "cannot write " + file.string());
      out.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
      if (!out.flush()) {
        throw Error(ErrorKind::IoError, "write failure on " + file.string());
      }
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + file.string());
    std::vector<uint8_t> back((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    reread.push_back(readUnit(back));
  }
  return loadBatch(reread, registry);
}

}  // namespace reflectjoin::genlang
