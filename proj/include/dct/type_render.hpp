#pragma once

#include <string>

#include "dct/type_node.hpp"

namespace dct {

// C declarator syntax: "unsigned int *" / "struct s **" / "int (*)(int)".
std::string render_type(const TypePtr& t);

// Declaration without the trailing semicolon: "int *x[3]", "struct s *p".
// Named UDTs render as tag references; anonymous ones render inline.
std::string render_declaration(const TypePtr& t, const std::string& name);

// Multi-line standalone definition ending in ";". Nested named UDTs render
// as tag references (they get their own definitions), anonymous ones inline.
std::string render_udt_definition(const TypePtr& t);

}  // namespace dct
