#include "reflectjoin/genlang/parser.hpp"

#include "reflectjoin/error.hpp"
#include "reflectjoin/genlang/lexer.hpp"

namespace reflectjoin::genlang {

namespace {

class Parser {
 public:
  explicit Parser(const SourceUnit& unit)
      : unit_(unit), tokens_(lex(unit.sourceText)) {}

  ClassDecl parseClass() {
    ClassDecl decl;
    decl.line = peek().line;
    expectKeyword("class");
    decl.name = expectIdent("class name");
    if (peekKeyword("implements")) {
      next();
      decl.implementsInterface = expectIdent("interface name");
    }
    expectPunct("{");
    while (!peekPunct("}")) {
      decl.methods.push_back(parseMember());
    }
    expectPunct("}");
    if (peek().kind != TokKind::End) {
      fail("trailing tokens after class body");
    }
    if (decl.name != unit_.className) {
      fail("declared class '" + decl.name + "' does not match unit name '" +
           unit_.className + "'");
    }
    return decl;
  }

 private:
  const SourceUnit& unit_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw CompilationError(CompilationError::Phase::Syntax, peek().line, msg);
  }

  bool peekKeyword(const char* kw, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokKind::Keyword && t.text == kw;
  }
  bool peekPunct(const char* p, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokKind::Punct && t.text == p;
  }

  void expectKeyword(const char* kw) {
    if (!peekKeyword(kw)) fail(std::string("expected '") + kw + "'");
    next();
  }
  void expectPunct(const char* p) {
    if (!peekPunct(p)) {
      fail(std::string("expected '") + p + "', found '" + peek().text + "'");
    }
    next();
  }
  std::string expectIdent(const char* what) {
    if (peek().kind != TokKind::Ident) {
      fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    }
    return next().text;
  }
  /// Attribute and member positions admit keyword-shaped names.
  std::string expectMemberName() {
    const Token& t = peek();
    if (t.kind != TokKind::Ident && t.kind != TokKind::Keyword) {
      fail("expected member name, found '" + t.text + "'");
    }
    return next().text;
  }

  bool peekTypeStart() const {
    return peekKeyword("int") || peekKeyword("text") || peekKeyword("bool") ||
           peekKeyword("any") || peekKeyword("seq");
  }

  GlType parseType() {
    const Token& t = peek();
    if (t.kind == TokKind::Keyword) {
      if (t.text == "int") { next(); return GlType::intType(); }
      if (t.text == "text") { next(); return GlType::textType(); }
      if (t.text == "bool") { next(); return GlType::boolType(); }
      if (t.text == "any") { next(); return GlType::anyType(); }
      if (t.text == "seq") { next(); return GlType::seqType(); }
      fail("expected a type, found '" + t.text + "'");
    }
    std::string name = expectIdent("type name");
    if (peekPunct("[") && peekPunct("]", 1)) {
      next();
      next();
      return GlType::arrayType(std::move(name));
    }
    return GlType::classType(std::move(name));
  }

  MethodDecl parseMember() {
    MethodDecl m;
    m.line = peek().line;
    if (peekKeyword("static")) {
      next();
      m.isStatic = true;
      m.returnType = parseType();
      m.name = expectIdent("method name");
      expectPunct("(");
      if (!peekPunct(")")) {
        while (true) {
          Param p;
          p.type = parseType();
          p.name = expectIdent("parameter name");
          m.params.push_back(std::move(p));
          if (peekPunct(")")) break;
          expectPunct(",");
        }
      }
      expectPunct(")");
      m.body = parseBlock();
      return m;
    }
    // Accessor declaration: `<domain> name();`
    m.isAccessor = true;
    if (peekKeyword("int")) {
      next();
      m.returnType = GlType::intType();
    } else if (peekKeyword("text")) {
      next();
      m.returnType = GlType::textType();
    } else {
      fail("expected 'static' method or 'int'/'text' accessor declaration");
    }
    m.name = expectMemberName();
    expectPunct("(");
    expectPunct(")");
    expectPunct(";");
    return m;
  }

  std::vector<StmtPtr> parseBlock() {
    expectPunct("{");
    std::vector<StmtPtr> stmts;
    while (!peekPunct("}")) {
      stmts.push_back(parseStmt());
    }
    expectPunct("}");
    return stmts;
  }

  std::vector<StmtPtr> parseBlockOrStmt() {
    if (peekPunct("{")) return parseBlock();
    std::vector<StmtPtr> one;
    one.push_back(parseStmt());
    return one;
  }

  StmtPtr parseStmt() {
    int line = peek().line;
    auto make = [&](auto node) {
      auto s = std::make_unique<Stmt>();
      s->line = line;
      s->node = std::move(node);
      return s;
    };

    if (peekKeyword("for")) return make(parseFor());
    if (peekKeyword("if")) {
      next();
      IfStmt s;
      expectPunct("(");
      s.cond = parseExpr();
      expectPunct(")");
      s.body = parseBlockOrStmt();
      return make(std::move(s));
    }
    if (peekKeyword("return")) {
      next();
      ReturnStmt s;
      s.value = parseExpr();
      expectPunct(";");
      return make(std::move(s));
    }
    if (peekKeyword("emit")) {
      next();
      EmitStmt s;
      s.value = parseExpr();
      expectPunct(";");
      return make(std::move(s));
    }
    if (peekTypeStart() || looksLikeDeclaration()) {
      VarDeclStmt s;
      s.declared = parseType();
      s.name = expectIdent("variable name");
      expectPunct("=");
      s.init = parseExpr();
      expectPunct(";");
      return make(std::move(s));
    }
    // Expression statement or assignment.
    ExprPtr e = parseExpr();
    if (peekPunct("=")) {
      next();
      if (!std::holds_alternative<VarRef>(e->node) &&
          !std::holds_alternative<IndexExpr>(e->node)) {
        fail("assignment target must be a variable or array element");
      }
      AssignStmt s;
      s.target = std::move(e);
      s.value = parseExpr();
      expectPunct(";");
      return make(std::move(s));
    }
    ExprStmt s;
    s.expr = std::move(e);
    expectPunct(";");
    return make(std::move(s));
  }

  // `Foo x = ...` or `Foo[] x = ...` at statement start.
  bool looksLikeDeclaration() const {
    if (peek().kind != TokKind::Ident) return false;
    if (peek(1).kind == TokKind::Ident) return true;
    return peekPunct("[", 1) && peekPunct("]", 2);
  }

  ForStmt parseFor() {
    expectKeyword("for");
    ForStmt s;
    expectPunct("(");
    expectKeyword("int");
    s.var = expectIdent("loop variable");
    expectPunct("=");
    s.init = parseExpr();
    expectPunct(";");
    std::string condVar = expectIdent("loop variable");
    if (condVar != s.var) fail("loop condition must test the loop variable");
    expectPunct("<");
    s.bound = parseExpr();
    expectPunct(";");
    std::string incVar = expectIdent("loop variable");
    if (incVar != s.var) fail("loop increment must use the loop variable");
    expectPunct("++");
    expectPunct(")");
    s.body = parseBlockOrStmt();
    return s;
  }

  ExprPtr makeExpr(int line, auto node) {
    auto e = std::make_unique<Expr>();
    e->line = line;
    e->node = std::move(node);
    return e;
  }

  ExprPtr parseExpr() { return parseAnd(); }

  ExprPtr parseAnd() {
    ExprPtr lhs = parseEq();
    while (peekPunct("&&")) {
      int line = next().line;
      BinaryExpr b{BinaryExpr::Op::And, std::move(lhs), parseEq()};
      lhs = makeExpr(line, std::move(b));
    }
    return lhs;
  }

  ExprPtr parseEq() {
    ExprPtr lhs = parseConcat();
    if (peekPunct("==")) {
      int line = next().line;
      BinaryExpr b{BinaryExpr::Op::Eq, std::move(lhs), parseConcat()};
      return makeExpr(line, std::move(b));
    }
    return lhs;
  }

  ExprPtr parseConcat() {
    ExprPtr lhs = parsePostfix();
    while (peekPunct("+")) {
      int line = next().line;
      BinaryExpr b{BinaryExpr::Op::Concat, std::move(lhs), parsePostfix()};
      lhs = makeExpr(line, std::move(b));
    }
    return lhs;
  }

  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    while (true) {
      if (peekPunct(".")) {
        next();
        int line = peek().line;
        std::string name = expectMemberName();
        if (name == "length" && !peekPunct("(")) {
          e = makeExpr(line, ArrayLen{std::move(e)});
          continue;
        }
        expectPunct("(");
        MemberCall call;
        call.recv = std::move(e);
        call.name = std::move(name);
        if (!peekPunct(")")) {
          while (true) {
            call.args.push_back(parseExpr());
            if (peekPunct(")")) break;
            expectPunct(",");
          }
        }
        expectPunct(")");
        e = makeExpr(line, std::move(call));
        continue;
      }
      if (peekPunct("[")) {
        int line = next().line;
        IndexExpr ix;
        ix.array = std::move(e);
        ix.index = parseExpr();
        expectPunct("]");
        e = makeExpr(line, std::move(ix));
        continue;
      }
      return e;
    }
  }

  // `( Ident )` or `( Ident [ ] )` followed by a primary start is a cast.
  bool looksLikeCast() const {
    if (!peekPunct("(")) return false;
    size_t after;
    if (peek(1).kind == TokKind::Ident && peekPunct(")", 2)) {
      after = 3;
    } else if (peek(1).kind == TokKind::Ident && peekPunct("[", 2) &&
               peekPunct("]", 3) && peekPunct(")", 4)) {
      after = 5;
    } else {
      return false;
    }
    const Token& t = peek(after);
    if (t.kind == TokKind::Ident || t.kind == TokKind::IntLit ||
        t.kind == TokKind::TextLit) {
      return true;
    }
    if (t.kind == TokKind::Keyword &&
        (t.text == "new" || t.text == "true" || t.text == "false")) {
      return true;
    }
    return t.kind == TokKind::Punct && t.text == "(";
  }

  ExprPtr parsePrimary() {
    const Token& t = peek();
    int line = t.line;
    if (t.kind == TokKind::IntLit) {
      int64_t v = std::stoll(next().text);
      return makeExpr(line, IntLit{v});
    }
    if (t.kind == TokKind::TextLit) {
      return makeExpr(line, TextLit{next().text});
    }
    if (t.kind == TokKind::Keyword) {
      if (t.text == "true") { next(); return makeExpr(line, BoolLit{true}); }
      if (t.text == "false") { next(); return makeExpr(line, BoolLit{false}); }
      if (t.text == "new") {
        next();
        if (peekKeyword("seq")) {
          next();
          expectPunct("(");
          expectPunct(")");
          return makeExpr(line, NewSeqExpr{});
        }
        std::string className = expectIdent("class name after 'new'");
        if (peekPunct("[")) {
          next();
          NewArrayExpr a;
          a.className = std::move(className);
          a.size = parseExpr();
          expectPunct("]");
          return makeExpr(line, std::move(a));
        }
        expectPunct("(");
        NewTupleExpr c;
        c.className = std::move(className);
        if (!peekPunct(")")) {
          while (true) {
            c.args.push_back(parseExpr());
            if (peekPunct(")")) break;
            expectPunct(",");
          }
        }
        expectPunct(")");
        return makeExpr(line, std::move(c));
      }
      fail("unexpected '" + t.text + "' in expression");
    }
    if (t.kind == TokKind::Ident) {
      std::string name = next().text;
      if (peekPunct("(")) {
        next();
        StaticCall call;
        call.name = std::move(name);
        if (!peekPunct(")")) {
          while (true) {
            call.args.push_back(parseExpr());
            if (peekPunct(")")) break;
            expectPunct(",");
          }
        }
        expectPunct(")");
        return makeExpr(line, std::move(call));
      }
      return makeExpr(line, VarRef{std::move(name)});
    }
    if (peekPunct("(")) {
      if (looksLikeCast()) {
        next();  // '('
        CastExpr cast;
        std::string className = expectIdent("cast target");
        if (peekPunct("[")) {
          next();
          expectPunct("]");
          cast.target = GlType::arrayType(std::move(className));
        } else {
          cast.target = GlType::classType(std::move(className));
        }
        expectPunct(")");
        cast.value = parsePostfix();
        return makeExpr(line, std::move(cast));
      }
      next();
      ExprPtr inner = parseExpr();
      expectPunct(")");
      return inner;
    }
    fail("unexpected '" + t.text + "' in expression");
  }
};

}  // namespace

GenLangAst parse(const SourceUnit& unit) {
  Parser p(unit);
  return p.parseClass();
}

}  // namespace reflectjoin::genlang
