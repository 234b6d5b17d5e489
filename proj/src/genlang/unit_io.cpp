#include "reflectjoin/genlang/unit_io.hpp"

#include <zlib.h>

#include "reflectjoin/error.hpp"

namespace reflectjoin::genlang {

namespace {

constexpr char kMagic[4] = {'R', 'J', 'B', 'C'};
constexpr size_t kMaxNameLen = 4096;

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorKind::ClassFormat, msg);
}

struct Writer {
  std::vector<uint8_t> out;

  void u8(uint8_t v) { out.push_back(v); }
  void u16(uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
  }
  void u32(uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
  }
  void u64(uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
  }
  void bytes(const void* data, size_t n) {
    const auto* p = static_cast<const uint8_t*>(data);
    out.insert(out.end(), p, p + n);
  }
  void str16(const std::string& s) {
    if (s.size() > 0xffff) bad("string too long for serialization");
    u16(static_cast<uint16_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void str32(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
};

struct Reader {
  const std::vector<uint8_t>& in;
  size_t pos = 0;

  void need(size_t n) const {
    if (pos + n > in.size()) bad("truncated unit");
  }
  uint8_t u8() {
    need(1);
    return in[pos++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>((in[pos] << 8) | in[pos + 1]);
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in[pos + i];
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in[pos + i];
    pos += 8;
    return v;
  }
  std::string str16(size_t maxLen = kMaxNameLen) {
    uint16_t n = u16();
    if (n > maxLen) bad("name length out of range");
    need(n);
    std::string s(reinterpret_cast<const char*>(in.data() + pos), n);
    pos += n;
    return s;
  }
  std::string str32() {
    uint32_t n = u32();
    if (n > (1u << 24)) bad("text constant too large");
    need(n);
    std::string s(reinterpret_cast<const char*>(in.data() + pos), n);
    pos += n;
    return s;
  }
};

uint32_t crcOf(const uint8_t* data, size_t n) {
  return static_cast<uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(data), static_cast<uInt>(n)));
}

}  // namespace

std::vector<uint8_t> writeUnit(const CompiledUnit& unit) {
  Writer w;
  w.bytes(kMagic, 4);
  w.u16(kUnitFormatVersion);
  w.str16(unit.className);
  if (unit.interfaceName) {
    w.u8(1);
    w.str16(*unit.interfaceName);
  } else {
    w.u8(0);
  }
  w.u64(unit.schemaFingerprint);
  if (unit.pool.size() > 0xffff) bad("constant pool too large");
  w.u16(static_cast<uint16_t>(unit.pool.size()));
  for (const PoolEntry& e : unit.pool) {
    w.u8(static_cast<uint8_t>(e.kind));
    switch (e.kind) {
      case PoolEntry::Kind::Int:
        w.u64(static_cast<uint64_t>(e.intValue));
        break;
      case PoolEntry::Kind::Text:
        w.str32(e.strValue);
        break;
      case PoolEntry::Kind::ClassRef:
        w.str16(e.strValue);
        break;
    }
  }
  if (unit.methods.size() > 0xffff) bad("method table too large");
  w.u16(static_cast<uint16_t>(unit.methods.size()));
  for (const MethodCode& m : unit.methods) {
    w.str16(m.name);
    w.str16(m.signature);
    w.u16(m.maxStack);
    w.u16(m.maxLocals);
    w.u32(static_cast<uint32_t>(m.code.size()));
    w.bytes(m.code.data(), m.code.size());
  }
  w.u32(crcOf(w.out.data(), w.out.size()));
  return std::move(w.out);
}

CompiledUnit readUnit(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 4 + 2 + 4) bad("unit too short");
  uint32_t storedCrc = 0;
  for (size_t i = bytes.size() - 4; i < bytes.size(); ++i) {
    storedCrc = (storedCrc << 8) | bytes[i];
  }
  if (crcOf(bytes.data(), bytes.size() - 4) != storedCrc) {
    bad("CRC mismatch");
  }

  Reader r{bytes};
  char magic[4];
  r.need(4);
  std::copy(bytes.begin(), bytes.begin() + 4, magic);
  r.pos = 4;
  if (!std::equal(magic, magic + 4, kMagic)) bad("bad magic");
  uint16_t version = r.u16();
  if (version != kUnitFormatVersion) {
    bad("unsupported format version " + std::to_string(version));
  }

  CompiledUnit unit;
  unit.className = r.str16();
  if (r.u8()) unit.interfaceName = r.str16();
  unit.schemaFingerprint = r.u64();

  uint16_t poolCount = r.u16();
  unit.pool.reserve(poolCount);
  for (uint16_t i = 0; i < poolCount; ++i) {
    PoolEntry e;
    uint8_t kind = r.u8();
    switch (kind) {
      case 1:
        e.kind = PoolEntry::Kind::Int;
        e.intValue = static_cast<int64_t>(r.u64());
        break;
      case 2:
        e.kind = PoolEntry::Kind::Text;
        e.strValue = r.str32();
        break;
      case 3:
        e.kind = PoolEntry::Kind::ClassRef;
        e.strValue = r.str16();
        break;
      default:
        bad("unknown pool tag " + std::to_string(kind));
    }
    unit.pool.push_back(std::move(e));
  }

  uint16_t methodCount = r.u16();
  unit.methods.reserve(methodCount);
  for (uint16_t i = 0; i < methodCount; ++i) {
    MethodCode m;
    m.name = r.str16();
    m.signature = r.str16();
    m.maxStack = r.u16();
    m.maxLocals = r.u16();
    uint32_t codeLen = r.u32();
    if (codeLen > (1u << 20)) bad("code length out of range");
    r.need(codeLen);
    m.code.assign(bytes.begin() + static_cast<ptrdiff_t>(r.pos),
                  bytes.begin() + static_cast<ptrdiff_t>(r.pos + codeLen));
    r.pos += codeLen;
    unit.methods.push_back(std::move(m));
  }

  if (r.pos != bytes.size() - 4) bad("trailing bytes in unit");
  return unit;
}

}  // namespace reflectjoin::genlang
