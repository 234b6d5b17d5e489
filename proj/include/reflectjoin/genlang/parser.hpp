#pragma once

#include "reflectjoin/genlang/ast.hpp"
#include "reflectjoin/genlang/source.hpp"

namespace reflectjoin::genlang {

/// Parses one class declaration. Checks that the declared class name equals
/// unit.className. Throws CompilationError(Syntax).
GenLangAst parse(const SourceUnit& unit);

}  // namespace reflectjoin::genlang
