#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reflectjoin/genlang/bytecode.hpp"
#include "reflectjoin/genlang/registry.hpp"

namespace reflectjoin::genlang {

/// Compiles a batch of sources to verified-ready units without touching the
/// registry or the file system. Units may reference each other. All-or-
/// nothing: any failure raises CompilationError and yields no units.
/// Deterministic: identical inputs produce byte-identical units.
std::vector<CompiledUnit> compileToBytes(const std::vector<std::string>& names,
                                         const std::vector<std::string>& defns,
                                         const ClassRegistry& registry);

/// compileToBytes, then verify + load + resolve each unit. All-or-nothing:
/// on failure the registry is left exactly as it was.
std::vector<LoadedClass> compileClasses(const std::vector<std::string>& names,
                                        const std::vector<std::string>& defns,
                                        ClassRegistry& registry);

/// File-roundtrip backend: compiled units are serialized to `dir`, read
/// back, verified and loaded. Same observable result as compileClasses.
std::vector<LoadedClass> compileClassesViaFiles(
    const std::vector<std::string>& names,
    const std::vector<std::string>& defns, ClassRegistry& registry,
    const std::filesystem::path& dir);

}  // namespace reflectjoin::genlang
