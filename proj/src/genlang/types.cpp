#include "reflectjoin/genlang/types.hpp"

#include "reflectjoin/error.hpp"

namespace reflectjoin::genlang {

std::string GlType::str() const {
  switch (kind) {
    case Kind::Int: return "int";
    case Kind::Text: return "text";
    case Kind::Bool: return "bool";
    case Kind::Any: return "any";
    case Kind::Seq: return "seq";
    case Kind::Class: return className;
    case Kind::Array: return className + "[]";
    case Kind::Void: return "void";
  }
  return "?";
}

bool assignable(const GlType& target, const GlType& src) {
  if (target == src) return src.kind != GlType::Kind::Void;
  return target.kind == GlType::Kind::Any && src.kind != GlType::Kind::Void;
}

namespace {

void encodeType(const GlType& t, std::string& out) {
  switch (t.kind) {
    case GlType::Kind::Int: out += 'I'; return;
    case GlType::Kind::Text: out += 'T'; return;
    case GlType::Kind::Bool: out += 'B'; return;
    case GlType::Kind::Any: out += 'A'; return;
    case GlType::Kind::Seq: out += 'Q'; return;
    case GlType::Kind::Class:
      out += 'L';
      out += t.className;
      out += ';';
      return;
    case GlType::Kind::Array:
      out += "[L";
      out += t.className;
      out += ';';
      return;
    case GlType::Kind::Void: out += 'V'; return;
  }
}

[[noreturn]] void malformed(const std::string& s) {
  throw Error(ErrorKind::ClassFormat, "malformed signature '" + s + "'");
}

GlType decodeType(const std::string& s, size_t& pos) {
  if (pos >= s.size()) malformed(s);
  char c = s[pos++];
  switch (c) {
    case 'I': return GlType::intType();
    case 'T': return GlType::textType();
    case 'B': return GlType::boolType();
    case 'A': return GlType::anyType();
    case 'Q': return GlType::seqType();
    case 'L':
    case '[': {
      bool isArray = (c == '[');
      if (isArray) {
        if (pos >= s.size() || s[pos] != 'L') malformed(s);
        ++pos;
      }
      size_t end = s.find(';', pos);
      if (end == std::string::npos || end == pos) malformed(s);
      std::string name = s.substr(pos, end - pos);
      pos = end + 1;
      return isArray ? GlType::arrayType(std::move(name))
                     : GlType::classType(std::move(name));
    }
    default: malformed(s);
  }
}

}  // namespace

std::string encodeSignature(const MethodSig& sig) {
  std::string out;
  out += sig.isAccessor ? "A:(" : "S:(";
  for (const GlType& p : sig.params) encodeType(p, out);
  out += ')';
  encodeType(sig.returnType, out);
  return out;
}

MethodSig parseSignature(const std::string& s) {
  MethodSig sig;
  if (s.size() < 4 || (s[0] != 'S' && s[0] != 'A') || s[1] != ':' || s[2] != '(') {
    malformed(s);
  }
  sig.isAccessor = (s[0] == 'A');
  size_t pos = 3;
  while (pos < s.size() && s[pos] != ')') {
    sig.params.push_back(decodeType(s, pos));
  }
  if (pos >= s.size() || s[pos] != ')') malformed(s);
  ++pos;
  sig.returnType = decodeType(s, pos);
  if (pos != s.size()) malformed(s);
  if (sig.returnType.kind == GlType::Kind::Void) malformed(s);
  return sig;
}

}  // namespace reflectjoin::genlang
