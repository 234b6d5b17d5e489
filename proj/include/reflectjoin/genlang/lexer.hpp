#pragma once

#include <string>
#include <vector>

namespace reflectjoin::genlang {

enum class TokKind : uint8_t { Ident, Keyword, IntLit, TextLit, Punct, End };

struct Token {
  TokKind kind;
  std::string text;
  int line;
};

bool isKeyword(const std::string& s);

/// Tokenizes GenLang source; comments (`// ...`) are skipped.
/// Throws CompilationError(Syntax) on malformed input.
std::vector<Token> lex(const std::string& source);

/// Re-renders a token stream as compilable source (used by mutation tests).
std::string renderTokens(const std::vector<Token>& tokens);

}  // namespace reflectjoin::genlang
