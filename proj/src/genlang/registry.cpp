#include "reflectjoin/genlang/registry.hpp"

#include "reflectjoin/error.hpp"
#include "reflectjoin/genlang/verifier.hpp"

namespace reflectjoin::genlang {

const ClassInfo::RunMethod* ClassInfo::findMethod(const std::string& n) const {
  auto it = methodIndex.find(n);
  if (it == methodIndex.end()) return nullptr;
  return &methods[it->second];
}

LoadedClass ClassRegistry::prepare(const CompiledUnit& unit) const {
  auto info = std::make_shared<ClassInfo>();
  info->name = unit.className;
  info->interfaceName = unit.interfaceName;
  info->unit = std::make_shared<const CompiledUnit>(unit);

  const CompiledUnit& u = *info->unit;
  size_t poolSize = u.pool.size();
  info->poolInts.assign(poolSize, 0);
  info->poolTexts.assign(poolSize, std::string());
  info->poolClassNames.assign(poolSize, std::string());
  info->poolKinds.assign(poolSize, PoolEntry::Kind::Int);
  info->poolClassCache = std::vector<std::atomic<const ClassInfo*>>(poolSize);
  for (size_t i = 0; i < poolSize; ++i) {
    info->poolKinds[i] = u.pool[i].kind;
    switch (u.pool[i].kind) {
      case PoolEntry::Kind::Int:
        info->poolInts[i] = u.pool[i].intValue;
        break;
      case PoolEntry::Kind::Text:
        info->poolTexts[i] = u.pool[i].strValue;
        break;
      case PoolEntry::Kind::ClassRef:
        info->poolClassNames[i] = u.pool[i].strValue;
        break;
    }
    info->poolClassCache[i].store(nullptr, std::memory_order_relaxed);
  }

  info->methods.reserve(u.methods.size());
  for (size_t i = 0; i < u.methods.size(); ++i) {
    ClassInfo::RunMethod rm;
    rm.code = &u.methods[i];
    rm.sig = parseSignature(u.methods[i].signature);
    if (rm.sig.isAccessor) {
      Domain d = rm.sig.returnType == GlType::intType() ? Domain::Int
                                                        : Domain::Text;
      info->attributes.push_back({u.methods[i].name, d});
    }
    info->methods.push_back(std::move(rm));
    info->methodIndex.emplace(u.methods[i].name, static_cast<int>(i));
  }
  return info;
}

LoadedClass ClassRegistry::loadUnit(const CompiledUnit& unit, bool resolve) {
  verifyUnit(unit);
  LoadedClass bound;
  bool fresh = false;
  {
    std::unique_lock lock(mutex_);
    auto it = classes_.find(unit.className);
    if (it != classes_.end()) {
      bound = it->second;  // an existing binding always wins
    } else {
      bound = prepare(unit);
      classes_.emplace(unit.className, bound);
      fresh = true;
    }
  }
  if (resolve) {
    try {
      resolveRefs(*bound);
    } catch (...) {
      if (fresh) unbind(unit.className);
      throw;
    }
  }
  return bound;
}

void ClassRegistry::resolveRefs(const ClassInfo& info) const {
  for (size_t i = 0; i < info.poolKinds.size(); ++i) {
    if (info.poolKinds[i] != PoolEntry::Kind::ClassRef) continue;
    if (info.poolClassCache[i].load(std::memory_order_acquire)) continue;
    const ClassInfo* target = resolveExecutable(info.poolClassNames[i]);
    if (!target) {
      throw Error(ErrorKind::ClassNotFound,
                  "class '" + info.poolClassNames[i] + "' referenced by " +
                      info.name + " is not loaded");
    }
    info.poolClassCache[i].store(target, std::memory_order_release);
  }
}

LoadedClass ClassRegistry::lookup(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = classes_.find(name);
  if (it == classes_.end()) {
    throw Error(ErrorKind::ClassNotFound, "class '" + name + "' is not loaded");
  }
  return it->second;
}

std::optional<LoadedClass> ClassRegistry::find(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = classes_.find(name);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

bool ClassRegistry::isLoaded(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return classes_.count(name) != 0;
}

bool ClassRegistry::isKnown(const std::string& name) const {
  return isLoaded(name) || schemas_.contains(name);
}

std::optional<SchemaDescriptor> ClassRegistry::describe(
    const std::string& name) const {
  {
    std::shared_lock lock(mutex_);
    auto it = classes_.find(name);
    if (it != classes_.end()) {
      SchemaDescriptor d;
      d.className = it->second->name;
      d.attributes = it->second->attributes;
      d.implementsInterface = it->second->interfaceName;
      return d;
    }
  }
  return schemas_.find(name);
}

const ClassInfo* ClassRegistry::resolveExecutable(const std::string& name) const {
  {
    std::shared_lock lock(mutex_);
    auto it = classes_.find(name);
    if (it != classes_.end()) return it->second.get();
    auto sb = schemaBacked_.find(name);
    if (sb != schemaBacked_.end()) return sb->second.get();
  }
  auto schema = schemas_.find(name);
  if (!schema) return nullptr;
  auto info = std::make_shared<ClassInfo>();
  info->name = schema->className;
  info->attributes = schema->attributes;
  info->interfaceName = schema->implementsInterface;
  std::unique_lock lock(mutex_);
  auto [it, inserted] = schemaBacked_.emplace(name, std::move(info));
  return it->second.get();
}

std::vector<std::string> ClassRegistry::loadedNames() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> names;
  names.reserve(classes_.size());
  for (const auto& [name, cls] : classes_) names.push_back(name);
  return names;
}

size_t ClassRegistry::loadedCount() const {
  std::shared_lock lock(mutex_);
  return classes_.size();
}

void ClassRegistry::unbind(const std::string& name) {
  std::unique_lock lock(mutex_);
  auto it = classes_.find(name);
  if (it == classes_.end()) return;
  graveyard_.push_back(std::move(it->second));
  classes_.erase(it);
}

}  // namespace reflectjoin::genlang
