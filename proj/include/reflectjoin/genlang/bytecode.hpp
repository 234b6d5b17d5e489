#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reflectjoin::genlang {

/// Stack-machine instruction set. Operands are big-endian u16 unless noted.
enum class Op : uint8_t {
  PushInt = 1,   // pool index
  PushText,      // pool index
  PushTrue,
  PushFalse,
  Load,          // local slot
  Store,         // local slot
  Pop,
  EqInt,
  EqText,
  And,
  LtInt,
  Inc,           // local slot
  Concat,
  IntToText,
  NewTuple,      // pool classref, u8 argc
  NewArray,      // pool classref
  ArrayLen,
  ArrayLoad,
  ArrayStore,
  NewSeq,
  SeqAdd,
  SeqSize,
  SeqGet,
  GetAttr,       // attribute index
  Call,          // method index within the same unit
  CastTuple,     // pool classref
  CastArray,     // pool classref
  Jmp,           // code offset
  JmpIfFalse,    // code offset
  JmpIfGe,       // local a, local b, code offset: jump when a >= b
  IncJmp,        // local slot, code offset: increment then jump
  RetVal,
  EmitLine,
};

constexpr uint8_t kLastOp = static_cast<uint8_t>(Op::EmitLine);

/// Operand byte count for each opcode.
int operandBytes(Op op);

struct PoolEntry {
  enum class Kind : uint8_t { Int = 1, Text = 2, ClassRef = 3 };
  Kind kind;
  int64_t intValue = 0;
  std::string strValue;  // Text payload or ClassRef name

  bool operator==(const PoolEntry&) const = default;
};

struct MethodCode {
  std::string name;
  std::string signature;  // see types.hpp
  uint16_t maxStack = 0;
  uint16_t maxLocals = 0;
  std::vector<uint8_t> code;

  bool operator==(const MethodCode&) const = default;
};

/// Verified bytecode for one class; serializable bit-exactly (unit_io.hpp).
struct CompiledUnit {
  std::string className;
  std::optional<std::string> interfaceName;
  uint64_t schemaFingerprint = 0;
  std::vector<PoolEntry> pool;
  std::vector<MethodCode> methods;

  bool operator==(const CompiledUnit&) const = default;
};

}  // namespace reflectjoin::genlang
