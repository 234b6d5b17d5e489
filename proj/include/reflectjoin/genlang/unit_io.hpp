#pragma once

#include <cstdint>
#include <vector>

#include "reflectjoin/genlang/bytecode.hpp"

namespace reflectjoin::genlang {

// Bit-exact unit serialization. Layout (all integers big-endian):
//   magic "RJBC", version u16,
//   className (u16 length + UTF-8),
//   interface flag u8 (+ u16 length + UTF-8 when present),
//   schemaFingerprint u64,
//   pool: count u16, then tagged entries
//     (INT: i64; TEXT: u32 length + UTF-8; CLASSREF: u16 length + UTF-8),
//   methods: count u16, per method name, signature, maxStack u16,
//     maxLocals u16, code length u32, instruction bytes,
//   CRC-32 (u32) of all preceding bytes.
std::vector<uint8_t> writeUnit(const CompiledUnit& unit);

/// Parses untrusted bytes; rejects bad magic/version/structure/CRC with
/// Error(ClassFormat).
CompiledUnit readUnit(const std::vector<uint8_t>& bytes);

constexpr uint16_t kUnitFormatVersion = 1;

}  // namespace reflectjoin::genlang
