#pragma once

#include <json.hpp>

#include "dct/c_ast.hpp"
#include "dct/canonicalize.hpp"

namespace dct {

// TranslationUnit interchange format (functions, typedefs, udts). Function
// bodies travel as canonical text; unit_from_json re-parses them, so inputs
// must be canonicalized units. The optional name map from canonicalize_names
// rides along.
nlohmann::json unit_to_json(const TranslationUnit& unit, const NameMap* names = nullptr);
TranslationUnit unit_from_json(const nlohmann::json& j, NameMap* names = nullptr);

}  // namespace dct
