#pragma once

#include <string>

namespace reflectjoin::genlang {

/// Named source text of one GenLang class. The name must equal the class
/// name declared inside the text; parse() checks this.
struct SourceUnit {
  std::string className;
  std::string sourceText;
};

}  // namespace reflectjoin::genlang
