#include "reflectjoin/genlang/verifier.hpp"

#include <deque>
#include <map>
#include <set>

#include "reflectjoin/error.hpp"
#include "reflectjoin/genlang/types.hpp"
#include "reflectjoin/meta.hpp"

namespace reflectjoin::genlang {

int operandBytes(Op op) {
  switch (op) {
    case Op::PushInt:
    case Op::PushText:
    case Op::Load:
    case Op::Store:
    case Op::Inc:
    case Op::NewArray:
    case Op::GetAttr:
    case Op::Call:
    case Op::CastTuple:
    case Op::CastArray:
    case Op::Jmp:
    case Op::JmpIfFalse:
      return 2;
    case Op::NewTuple:
      return 3;  // classref u16 + argc u8
    case Op::IncJmp:
      return 4;  // local u16 + target u16
    case Op::JmpIfGe:
      return 6;  // local u16, local u16, target u16
    default:
      return 0;
  }
}

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorKind::ClassFormat, msg);
}

struct Decoded {
  Op op;
  uint16_t a = 0;
  uint16_t b = 0;
  uint16_t c = 0;
  size_t next = 0;
};

uint16_t rd16(const std::vector<uint8_t>& code, size_t at) {
  return static_cast<uint16_t>((code[at] << 8) | code[at + 1]);
}

Decoded decode(const std::vector<uint8_t>& code, size_t pc,
               const std::string& where) {
  uint8_t raw = code[pc];
  if (raw < 1 || raw > kLastOp) {
    bad(where + ": unknown opcode " + std::to_string(raw) + " at " +
        std::to_string(pc));
  }
  Decoded d;
  d.op = static_cast<Op>(raw);
  int nOperand = operandBytes(d.op);
  if (pc + 1 + nOperand > code.size()) {
    bad(where + ": truncated instruction at " + std::to_string(pc));
  }
  switch (nOperand) {
    case 2:
      d.a = rd16(code, pc + 1);
      break;
    case 3:
      d.a = rd16(code, pc + 1);
      d.b = code[pc + 3];
      break;
    case 4:
      d.a = rd16(code, pc + 1);
      d.b = rd16(code, pc + 3);
      break;
    case 6:
      d.a = rd16(code, pc + 1);
      d.b = rd16(code, pc + 3);
      d.c = rd16(code, pc + 5);
      break;
    default:
      break;
  }
  d.next = pc + 1 + nOperand;
  return d;
}

class MethodVerifier {
 public:
  MethodVerifier(const CompiledUnit& unit, const MethodCode& method,
                 const std::vector<MethodSig>& sigs)
      : unit_(unit), method_(method), sigs_(sigs),
        where_(unit.className + "." + method.name) {}

  void run() {
    if (method_.code.empty()) bad(where_ + ": empty code");
    collectBoundaries();
    checkOperands();
    dataflow();
  }

 private:
  const CompiledUnit& unit_;
  const MethodCode& method_;
  const std::vector<MethodSig>& sigs_;
  std::string where_;
  std::set<size_t> starts_;
  std::map<size_t, Decoded> at_;

  void collectBoundaries() {
    size_t pc = 0;
    while (pc < method_.code.size()) {
      Decoded d = decode(method_.code, pc, where_);
      starts_.insert(pc);
      at_.emplace(pc, d);
      pc = d.next;
    }
  }

  void requirePool(uint16_t idx, PoolEntry::Kind kind) const {
    if (idx >= unit_.pool.size()) {
      bad(where_ + ": pool index " + std::to_string(idx) + " out of range");
    }
    if (unit_.pool[idx].kind != kind) {
      bad(where_ + ": pool entry " + std::to_string(idx) + " has wrong kind");
    }
  }

  void requireLocal(uint16_t idx) const {
    if (idx >= method_.maxLocals) {
      bad(where_ + ": local " + std::to_string(idx) + " exceeds maxLocals");
    }
  }

  void requireTarget(uint16_t target) const {
    if (!starts_.count(target)) {
      bad(where_ + ": jump target " + std::to_string(target) +
          " is not an instruction boundary");
    }
  }

  void checkOperands() const {
    for (const auto& [pc, d] : at_) {
      switch (d.op) {
        case Op::PushInt:
          requirePool(d.a, PoolEntry::Kind::Int);
          break;
        case Op::PushText:
          requirePool(d.a, PoolEntry::Kind::Text);
          break;
        case Op::Load:
        case Op::Store:
        case Op::Inc:
          requireLocal(d.a);
          break;
        case Op::NewTuple:
        case Op::NewArray:
        case Op::CastTuple:
        case Op::CastArray:
          requirePool(d.a, PoolEntry::Kind::ClassRef);
          break;
        case Op::GetAttr:
          break;  // checked against the live tuple at run time
        case Op::Call:
          if (d.a >= unit_.methods.size()) {
            bad(where_ + ": call target " + std::to_string(d.a) +
                " out of range");
          }
          break;
        case Op::Jmp:
        case Op::JmpIfFalse:
          requireTarget(d.a);
          break;
        case Op::IncJmp:
          requireLocal(d.a);
          requireTarget(d.b);
          break;
        case Op::JmpIfGe:
          requireLocal(d.a);
          requireLocal(d.b);
          requireTarget(d.c);
          break;
        default:
          break;
      }
    }
  }

  int stackDelta(const Decoded& d) const {
    switch (d.op) {
      case Op::PushInt:
      case Op::PushText:
      case Op::PushTrue:
      case Op::PushFalse:
      case Op::Load:
      case Op::NewSeq:
        return +1;
      case Op::Store:
      case Op::Pop:
      case Op::EqInt:
      case Op::EqText:
      case Op::And:
      case Op::LtInt:
      case Op::Concat:
      case Op::JmpIfFalse:
      case Op::EmitLine:
      case Op::ArrayLoad:
      case Op::SeqGet:
      case Op::RetVal:
        return -1;
      case Op::SeqAdd:
        return -2;
      case Op::ArrayStore:
        return -3;
      case Op::NewTuple:
        return -static_cast<int>(d.b) + 1;
      case Op::Call:
        return -static_cast<int>(sigs_[d.a].params.size()) + 1;
      default:
        return 0;  // IntToText, ArrayLen, GetAttr, casts, jumps, Inc, NewArray
    }
  }

  int popCount(const Decoded& d) const {
    switch (d.op) {
      case Op::Store:
      case Op::Pop:
      case Op::JmpIfFalse:
      case Op::EmitLine:
      case Op::RetVal:
      case Op::IntToText:
      case Op::ArrayLen:
      case Op::GetAttr:
      case Op::CastTuple:
      case Op::CastArray:
      case Op::NewArray:
      case Op::SeqSize:
        return 1;
      case Op::EqInt:
      case Op::EqText:
      case Op::And:
      case Op::LtInt:
      case Op::Concat:
      case Op::ArrayLoad:
      case Op::SeqGet:
      case Op::SeqAdd:
        return 2;
      case Op::ArrayStore:
        return 3;
      case Op::NewTuple:
        return d.b;
      case Op::Call:
        return static_cast<int>(sigs_[d.a].params.size());
      default:
        return 0;
    }
  }

  void dataflow() {
    std::map<size_t, int> heightAt;
    std::deque<size_t> work;
    heightAt[0] = 0;
    work.push_back(0);
    auto flowTo = [&](size_t target, int height) {
      auto [it, inserted] = heightAt.emplace(target, height);
      if (inserted) {
        work.push_back(target);
      } else if (it->second != height) {
        bad(where_ + ": inconsistent stack height at " + std::to_string(target));
      }
    };
    while (!work.empty()) {
      size_t pc = work.front();
      work.pop_front();
      const Decoded& d = at_.at(pc);
      int h = heightAt.at(pc);
      if (popCount(d) > h) {
        bad(where_ + ": stack underflow at " + std::to_string(pc));
      }
      int after = h + stackDelta(d);
      if (after > method_.maxStack) {
        bad(where_ + ": stack exceeds maxStack at " + std::to_string(pc));
      }
      switch (d.op) {
        case Op::RetVal:
          continue;  // terminal
        case Op::Jmp:
          flowTo(d.a, after);
          continue;
        case Op::IncJmp:
          flowTo(d.b, after);
          continue;
        case Op::JmpIfFalse:
          flowTo(d.a, after);
          break;
        case Op::JmpIfGe:
          flowTo(d.c, after);
          break;
        default:
          break;
      }
      if (d.next >= method_.code.size()) {
        bad(where_ + ": control flow runs off the end of the code");
      }
      flowTo(d.next, after);
    }
  }
};

}  // namespace

void verifyUnit(const CompiledUnit& unit) {
  if (!isIdentifier(unit.className)) {
    bad("invalid class name '" + unit.className + "'");
  }
  if (unit.interfaceName && !isIdentifier(*unit.interfaceName)) {
    bad("invalid interface name in class " + unit.className);
  }
  for (const PoolEntry& e : unit.pool) {
    if (e.kind == PoolEntry::Kind::ClassRef && !isIdentifier(e.strValue)) {
      bad("invalid class reference '" + e.strValue + "' in pool of " +
          unit.className);
    }
  }
  if (unit.methods.empty()) {
    bad("class " + unit.className + " has no methods");
  }

  std::vector<MethodSig> sigs;
  sigs.reserve(unit.methods.size());
  std::set<std::string> names;
  for (const MethodCode& m : unit.methods) {
    if (!isIdentifier(m.name)) {
      bad("invalid method name '" + m.name + "' in class " + unit.className);
    }
    if (!names.insert(m.name).second) {
      bad("duplicate method '" + m.name + "' in class " + unit.className);
    }
    MethodSig sig = parseSignature(m.signature);
    if (sig.isAccessor) {
      bool selfParam = sig.params.size() == 1 &&
                       sig.params[0] == GlType::classType(unit.className);
      bool domainRet = sig.returnType == GlType::intType() ||
                       sig.returnType == GlType::textType();
      if (!selfParam || !domainRet) {
        bad("accessor '" + m.name + "' in class " + unit.className +
            " has a malformed signature");
      }
    }
    if (m.maxLocals < sig.params.size()) {
      bad("method '" + m.name + "' declares fewer locals than parameters");
    }
    sigs.push_back(std::move(sig));
  }
  for (const MethodCode& m : unit.methods) {
    MethodVerifier(unit, m, sigs).run();
  }
}

}  // namespace reflectjoin::genlang
