#include "reflectjoin/genlang/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "reflectjoin/error.hpp"

namespace reflectjoin::genlang {

namespace {

constexpr std::array kKeywords = {
    "class", "implements", "static", "int",  "text", "bool",
    "any",   "seq",        "new",    "for",  "if",   "return",
    "true",  "false",      "emit",
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw CompilationError(CompilationError::Phase::Syntax, line, msg);
}

}  // namespace

bool isKeyword(const std::string& s) {
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1;
  size_t i = 0;
  const size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                       src[i] == '_')) {
        ++i;
      }
      std::string word = src.substr(start, i - start);
      out.push_back({isKeyword(word) ? TokKind::Keyword : TokKind::Ident,
                     std::move(word), line});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      std::string digits = src.substr(start, i - start);
      int64_t v = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        fail(line, "integer literal out of range: " + digits);
      }
      out.push_back({TokKind::IntLit, std::move(digits), line});
      continue;
    }
    if (c == '"') {
      std::string value;
      ++i;
      while (true) {
        if (i >= n || src[i] == '\n') fail(line, "unterminated text literal");
        char d = src[i++];
        if (d == '"') break;
        if (d == '\\') {
          if (i >= n) fail(line, "unterminated escape in text literal");
          char e = src[i++];
          switch (e) {
            case '"': value.push_back('"'); break;
            case '\\': value.push_back('\\'); break;
            case 'n': value.push_back('\n'); break;
            case 't': value.push_back('\t'); break;
            default: fail(line, std::string("unknown escape '\\") + e + "'");
          }
        } else {
          value.push_back(d);
        }
      }
      out.push_back({TokKind::TextLit, std::move(value), line});
      continue;
    }
    // Multi-character punctuation first.
    if (c == '=' && i + 1 < n && src[i + 1] == '=') {
      out.push_back({TokKind::Punct, "==", line});
      i += 2;
      continue;
    }
    if (c == '&' && i + 1 < n && src[i + 1] == '&') {
      out.push_back({TokKind::Punct, "&&", line});
      i += 2;
      continue;
    }
    if (c == '+' && i + 1 < n && src[i + 1] == '+') {
      out.push_back({TokKind::Punct, "++", line});
      i += 2;
      continue;
    }
    switch (c) {
      case '{': case '}': case '(': case ')': case '[': case ']':
      case ';': case ',': case '.': case '=': case '+': case '<':
        out.push_back({TokKind::Punct, std::string(1, c), line});
        ++i;
        break;
      default:
        fail(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({TokKind::End, "", line});
  return out;
}

std::string renderTokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (t.kind == TokKind::End) break;
    if (!out.empty()) out.push_back(' ');
    if (t.kind == TokKind::TextLit) {
      out.push_back('"');
      for (char c : t.text) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out.push_back(c);
        }
      }
      out.push_back('"');
    } else {
      out += t.text;
    }
  }
  out.push_back('\n');
  return out;
}

}  // namespace reflectjoin::genlang
