#include "reflectjoin/meta.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace reflectjoin {

const char* errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::DuplicateSchema: return "DuplicateSchema";
    case ErrorKind::SchemaNotFound: return "SchemaNotFound";
    case ErrorKind::IncompatibleDomains: return "IncompatibleDomains";
    case ErrorKind::InvalidRelation: return "InvalidRelation";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::Compilation: return "CompilationError";
    case ErrorKind::ClassFormat: return "ClassFormatError";
    case ErrorKind::ClassNotFound: return "ClassNotFound";
    case ErrorKind::NoSuchMethod: return "NoSuchMethod";
    case ErrorKind::ClassCast: return "ClassCastError";
    case ErrorKind::VmFault: return "VmFault";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorKind::InvalidJoin: return "InvalidJoin";
    case ErrorKind::BuilderUnderflow: return "BuilderUnderflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

const char* domainName(Domain d) { return d == Domain::Int ? "int" : "text"; }

std::optional<int> SchemaDescriptor::attributeIndex(const std::string& name) const {
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool isIdentifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void validateSchema(const SchemaDescriptor& d) {
  if (!isIdentifier(d.className)) {
    throw Error(ErrorKind::InvalidArgument,
                "invalid class name '" + d.className + "'");
  }
  if (d.implementsInterface && !isIdentifier(*d.implementsInterface)) {
    throw Error(ErrorKind::InvalidArgument,
                "invalid interface name '" + *d.implementsInterface + "'");
  }
  for (size_t i = 0; i < d.attributes.size(); ++i) {
    const auto& a = d.attributes[i];
    if (!isIdentifier(a.name)) {
      throw Error(ErrorKind::InvalidArgument,
                  "invalid attribute name '" + a.name + "'");
    }
    for (size_t j = 0; j < i; ++j) {
      if (d.attributes[j].name == a.name) {
        throw Error(ErrorKind::InvalidArgument,
                    "duplicate attribute '" + a.name + "' in schema " +
                        d.className);
      }
    }
  }
}

void SchemaRegistry::registerSchema(const SchemaDescriptor& d) {
  validateSchema(d);
  std::unique_lock lock(mutex_);
  auto it = schemas_.find(d.className);
  if (it != schemas_.end()) {
    if (it->second == d) return;  // idempotent re-registration
    throw Error(ErrorKind::DuplicateSchema,
                "schema '" + d.className +
                    "' already registered with a different structure");
  }
  schemas_.emplace(d.className, d);
}

SchemaDescriptor SchemaRegistry::lookupSchema(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = schemas_.find(name);
  if (it == schemas_.end()) {
    throw Error(ErrorKind::SchemaNotFound, "schema '" + name + "' not found");
  }
  return it->second;
}

std::optional<SchemaDescriptor> SchemaRegistry::find(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = schemas_.find(name);
  if (it == schemas_.end()) return std::nullopt;
  return it->second;
}

bool SchemaRegistry::contains(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return schemas_.count(name) != 0;
}

namespace {

// Rejects name collisions with mismatched domains before any overlap logic.
void checkDomainCompatibility(const SchemaDescriptor& s1,
                              const SchemaDescriptor& s2) {
  for (const auto& a : s1.attributes) {
    for (const auto& b : s2.attributes) {
      if (a.name == b.name && a.domain != b.domain) {
        throw Error(ErrorKind::IncompatibleDomains,
                    "attribute '" + a.name + "' is " + domainName(a.domain) +
                        " in " + s1.className + " but " + domainName(b.domain) +
                        " in " + s2.className);
      }
    }
  }
}

}  // namespace

std::vector<AttributeDescriptor> commonAttributes(const SchemaDescriptor& s1,
                                                  const SchemaDescriptor& s2) {
  checkDomainCompatibility(s1, s2);
  std::vector<AttributeDescriptor> out;
  for (const auto& a : s1.attributes) {
    for (const auto& b : s2.attributes) {
      if (a.name == b.name && a.domain == b.domain) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

std::vector<AttributeDescriptor> unionAttributes(const SchemaDescriptor& s1,
                                                 const SchemaDescriptor& s2) {
  checkDomainCompatibility(s1, s2);
  std::vector<AttributeDescriptor> out = s1.attributes;
  for (const auto& b : s2.attributes) {
    bool common = std::any_of(
        s1.attributes.begin(), s1.attributes.end(),
        [&](const AttributeDescriptor& a) { return a.name == b.name; });
    if (!common) out.push_back(b);
  }
  return out;
}

namespace {

struct DeclCursor {
  const std::string& text;
  size_t pos = 0;

  void skipWs() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool eat(char c) {
    skipWs();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skipWs();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_')) {
      ++pos;
    }
    return text.substr(start, pos - start);
  }
};

}  // namespace

SchemaDescriptor parseSchemaDeclaration(const std::string& text) {
  DeclCursor c{text};
  SchemaDescriptor d;
  d.className = c.ident();
  if (d.className.empty() || !c.eat('(')) {
    throw Error(ErrorKind::ParseError,
                "malformed schema declaration: '" + text + "'");
  }
  c.skipWs();
  if (!c.eat(')')) {
    while (true) {
      AttributeDescriptor a;
      a.name = c.ident();
      if (a.name.empty() || !c.eat(':')) {
        throw Error(ErrorKind::ParseError,
                    "malformed attribute in schema declaration: '" + text + "'");
      }
      std::string dom = c.ident();
      if (dom == "int") {
        a.domain = Domain::Int;
      } else if (dom == "text") {
        a.domain = Domain::Text;
      } else {
        throw Error(ErrorKind::ParseError,
                    "unknown domain '" + dom + "' in schema declaration");
      }
      d.attributes.push_back(a);
      if (c.eat(')')) break;
      if (!c.eat(',')) {
        throw Error(ErrorKind::ParseError,
                    "expected ',' or ')' in schema declaration: '" + text + "'");
      }
    }
  }
  c.skipWs();
  if (c.pos != text.size()) {
    throw Error(ErrorKind::ParseError,
                "trailing characters after schema declaration: '" + text + "'");
  }
  validateSchema(d);
  return d;
}

std::string formatSchemaDeclaration(const SchemaDescriptor& d) {
  std::ostringstream out;
  out << d.className << '(';
  for (size_t i = 0; i < d.attributes.size(); ++i) {
    if (i > 0) out << ", ";
    out << d.attributes[i].name << ':' << domainName(d.attributes[i].domain);
  }
  out << ')';
  return out.str();
}

std::string canonicalSchemaForm(const SchemaDescriptor& d) {
  std::ostringstream out;
  out << d.className << '(';
  for (size_t i = 0; i < d.attributes.size(); ++i) {
    if (i > 0) out << ',';
    out << d.attributes[i].name << ':' << domainName(d.attributes[i].domain);
  }
  out << ')';
  if (d.implementsInterface) out << " implements " << *d.implementsInterface;
  return out.str();
}

uint64_t fnv1a64(std::string_view bytes, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace reflectjoin
