#pragma once

#include <json.hpp>

#include "dct/type_node.hpp"

namespace dct {

// Kind-tagged JSON encoding used by corpus files; round-trips losslessly.
nlohmann::json type_to_json(const TypePtr& t);
TypePtr type_from_json(const nlohmann::json& j);

}  // namespace dct
