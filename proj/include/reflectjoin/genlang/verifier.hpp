#pragma once

#include "reflectjoin/genlang/bytecode.hpp"

namespace reflectjoin::genlang {

/// Structural validation of an untrusted unit: well-formed names and
/// signatures, in-range pool/local/method operands, jump targets on
/// instruction boundaries, and a balanced operand stack on every path
/// (dataflow over basic blocks, bounded by maxStack). Throws
/// Error(ClassFormat) on any violation.
void verifyUnit(const CompiledUnit& unit);

}  // namespace reflectjoin::genlang
