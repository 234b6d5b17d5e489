#include "reflectjoin/relmodel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace reflectjoin {

std::string valueToString(const Value& v) {
  if (v.index() == 0) return std::to_string(std::get<int64_t>(v));
  return std::get<std::string>(v);
}

GenericRelation::GenericRelation(std::vector<std::string> attributeNames,
                                 std::vector<Domain> attributeDomains,
                                 std::vector<std::vector<Value>> rows)
    : names_(std::move(attributeNames)),
      domains_(std::move(attributeDomains)),
      rows_(std::move(rows)) {
  if (names_.size() != domains_.size()) {
    throw Error(ErrorKind::InvalidRelation,
                "attribute name/domain count mismatch");
  }
  for (size_t i = 0; i < names_.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) {
        throw Error(ErrorKind::InvalidRelation,
                    "duplicate attribute name '" + names_[i] + "'");
      }
    }
  }
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != names_.size()) {
      throw Error(ErrorKind::InvalidRelation,
                  "row " + std::to_string(r) + " has " +
                      std::to_string(rows_[r].size()) + " values, expected " +
                      std::to_string(names_.size()));
    }
    for (size_t c = 0; c < names_.size(); ++c) {
      if (valueDomain(rows_[r][c]) != domains_[c]) {
        throw Error(ErrorKind::InvalidRelation,
                    "row " + std::to_string(r) + " column '" + names_[c] +
                        "' value does not match domain " +
                        domainName(domains_[c]));
      }
    }
  }
}

GenericRelation makeGenericRelation(std::vector<std::string> names,
                                    std::vector<Domain> domains,
                                    std::vector<std::vector<Value>> rows) {
  return GenericRelation(std::move(names), std::move(domains), std::move(rows));
}

namespace {

std::vector<std::string> splitLines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  // A trailing newline produces one empty final fragment; drop it.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> splitFields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

Value parseField(const std::string& field, Domain domain, size_t lineNo) {
  if (domain == Domain::Text) return field;
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::DomainError,
                "line " + std::to_string(lineNo) + ": '" + field +
                    "' is not a valid int");
  }
  return v;
}

TypedRelation parseRelationText(const std::string& text,
                                const std::filesystem::path& path) {
  std::vector<std::string> lines = splitLines(text);
  if (lines.empty()) {
    throw Error(ErrorKind::ParseError,
                path.string() + ": missing schema declaration line");
  }
  SchemaDescriptor schema;
  try {
    schema = parseSchemaDeclaration(lines[0]);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError,
                path.string() + " line 1: " + e.what());
  }
  TypedRelation rel{schema, {}};
  rel.tuples.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = splitFields(lines[i]);
    if (fields.size() != schema.attributes.size()) {
      throw Error(ErrorKind::ParseError,
                  path.string() + " line " + std::to_string(i + 1) + ": " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(schema.attributes.size()));
    }
    Tuple t{schema.className, {}};
    t.values.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      t.values.push_back(parseField(fields[c], schema.attributes[c].domain, i + 1));
    }
    rel.tuples.push_back(std::move(t));
  }
  return rel;
}

}  // namespace

TypedRelation loadRelation(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::IoError, "read failure on " + path.string());
  }
  return parseRelationText(buf.str(), path);
}

TypedRelation loadRelation(const std::filesystem::path& path,
                           const SchemaDescriptor& schema) {
  TypedRelation rel = loadRelation(path);
  if (rel.schema.className != schema.className ||
      rel.schema.attributes != schema.attributes) {
    throw Error(ErrorKind::ParseError,
                path.string() + " line 1: declared schema " +
                    formatSchemaDeclaration(rel.schema) +
                    " does not match expected " +
                    formatSchemaDeclaration(schema));
  }
  rel.schema = schema;
  return rel;
}

void writeRelationFile(const std::filesystem::path& path,
                       const TypedRelation& rel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  out << formatSchemaDeclaration(rel.schema) << '\n';
  for (const Tuple& t : rel.tuples) {
    for (size_t i = 0; i < t.values.size(); ++i) {
      if (i > 0) out << ',';
      std::string s = valueToString(t.values[i]);
      if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos) {
        throw Error(ErrorKind::InvalidArgument,
                    "text value contains a forbidden separator: '" + s + "'");
      }
      out << s;
    }
    out << '\n';
  }
  if (!out.flush()) {
    throw Error(ErrorKind::IoError, "write failure on " + path.string());
  }
}

namespace {

// Greedy multiplicity solver: repeatedly take the largest single-key product
// that fits the remaining target and capacities.
std::vector<std::pair<int64_t, int64_t>> solveMultiplicities(int64_t n1,
                                                             int64_t n2,
                                                             int64_t target) {
  std::vector<std::pair<int64_t, int64_t>> terms;
  int64_t remaining = target;
  int64_t c1 = n1;
  int64_t c2 = n2;
  while (remaining > 0) {
    if (c1 <= 0 || c2 <= 0) {
      throw Error(ErrorKind::Infeasible,
                  "no multiplicity solution for (n1=" + std::to_string(n1) +
                      ", n2=" + std::to_string(n2) +
                      ", target=" + std::to_string(target) + ")");
    }
    int64_t bestA = 0, bestB = 0, best = 0;
    int64_t bMax = std::min(c2, remaining);
    for (int64_t b = 1; b <= bMax; ++b) {
      int64_t a = std::min(c1, remaining / b);
      if (a <= 0) break;
      if (a * b > best) {
        best = a * b;
        bestA = a;
        bestB = b;
      }
    }
    terms.emplace_back(bestA, bestB);
    remaining -= best;
    c1 -= bestA;
    c2 -= bestB;
  }
  return terms;
}

Value randomValueFor(Domain d, std::mt19937_64& rng) {
  if (d == Domain::Int) return static_cast<int64_t>(rng() % 100000);
  static const char* alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::string s = "v";
  uint64_t r = rng();
  for (int i = 0; i < 9; ++i) {
    s.push_back(alphabet[r % 26]);
    r /= 26;
  }
  return s;
}

}  // namespace

std::pair<TypedRelation, TypedRelation> synthesizeDataset(
    const SchemaDescriptor& s1, const SchemaDescriptor& s2, int64_t n1,
    int64_t n2, int64_t target, uint64_t seed) {
  if (n1 < 0 || n2 < 0 || target < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative dataset size");
  }
  std::vector<AttributeDescriptor> common = commonAttributes(s1, s2);
  if (common.size() != 1 || common[0].domain != Domain::Int) {
    throw Error(ErrorKind::Infeasible,
                "synthesis requires exactly one common int attribute between " +
                    s1.className + " and " + s2.className);
  }
  const std::string& key = common[0].name;
  int k1 = *s1.attributeIndex(key);
  int k2 = *s2.attributeIndex(key);

  auto terms = solveMultiplicities(n1, n2, target);

  std::mt19937_64 rng(seed);
  auto fill = [&](const SchemaDescriptor& schema, int keyIdx, int64_t keyValue) {
    Tuple t{schema.className, {}};
    t.values.reserve(schema.attributes.size());
    for (size_t i = 0; i < schema.attributes.size(); ++i) {
      if (static_cast<int>(i) == keyIdx) {
        t.values.push_back(keyValue);
      } else {
        t.values.push_back(randomValueFor(schema.attributes[i].domain, rng));
      }
    }
    return t;
  };

  // Matching keys are 1..terms; padding keys continue above and are globally
  // unique so they join with nothing.
  TypedRelation r1{s1, {}};
  TypedRelation r2{s2, {}};
  r1.tuples.reserve(n1);
  r2.tuples.reserve(n2);
  int64_t nextKey = 1;
  for (const auto& [m1, m2] : terms) {
    int64_t keyValue = nextKey++;
    for (int64_t i = 0; i < m1; ++i) r1.tuples.push_back(fill(s1, k1, keyValue));
    for (int64_t i = 0; i < m2; ++i) r2.tuples.push_back(fill(s2, k2, keyValue));
  }
  while (static_cast<int64_t>(r1.tuples.size()) < n1) {
    r1.tuples.push_back(fill(s1, k1, nextKey++));
  }
  while (static_cast<int64_t>(r2.tuples.size()) < n2) {
    r2.tuples.push_back(fill(s2, k2, nextKey++));
  }
  return {std::move(r1), std::move(r2)};
}

GenericRelation toGeneric(const TypedRelation& r) {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  names.reserve(r.schema.attributes.size());
  domains.reserve(r.schema.attributes.size());
  for (const auto& a : r.schema.attributes) {
    names.push_back(a.name);
    domains.push_back(a.domain);
  }
  std::vector<std::vector<Value>> rows;
  rows.reserve(r.tuples.size());
  for (const Tuple& t : r.tuples) rows.push_back(t.values);
  return makeGenericRelation(std::move(names), std::move(domains),
                             std::move(rows));
}

TypedRelation fromGeneric(const GenericRelation& g,
                          const SchemaDescriptor& schema) {
  const auto& names = g.attributeNames();
  const auto& domains = g.attributeDomains();
  if (names.size() != schema.attributes.size()) {
    throw Error(ErrorKind::SchemaMismatch,
                "generic relation has " + std::to_string(names.size()) +
                    " attributes, schema " + schema.className + " has " +
                    std::to_string(schema.attributes.size()));
  }
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] != schema.attributes[i].name ||
        domains[i] != schema.attributes[i].domain) {
      throw Error(ErrorKind::SchemaMismatch,
                  "attribute " + std::to_string(i) + " is " + names[i] +
                      ", schema expects " + schema.attributes[i].name);
    }
  }
  TypedRelation rel{schema, {}};
  rel.tuples.reserve(g.rows().size());
  for (const auto& row : g.rows()) {
    rel.tuples.push_back(Tuple{schema.className, row});
  }
  return rel;
}

}  // namespace reflectjoin
