#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dct/type_node.hpp"

namespace dct {

// Total number of type-tree nodes: each primitive leaf counts 1, each
// modifier/constructor node counts 1 plus the sum over its children.
// Back-references to an ancestor tag count 1 and are not re-expanded.
// Throws UnresolvedAliasError on alias nodes.
std::int64_t complexity(const TypePtr& t);

// Struct/union fields counted recursively through nested UDT definitions.
// Back-references are not re-expanded. Throws UnresolvedAliasError.
std::int64_t recursive_field_count(const TypePtr& t);

// Structural identity ignoring every UDT tag and field name: same kinds,
// primitive names, array lengths, bitfield widths, field count and order,
// recursively. Cyclic types compare by bisimulation over the pair set of
// correspondingly bound ancestor definitions. Enums compare by underlying
// representation (int). Total: never throws.
bool composition_equal(const TypePtr& a, const TypePtr& b);

// composition_equal plus: every struct/union tag along the walk must match.
bool composition_and_tags_equal(const TypePtr& a, const TypePtr& b);

// Exact structural equality, names and tags included. Used by round-trip
// checks and tests.
bool types_identical(const TypePtr& a, const TypePtr& b);

// Replace every alias node by its resolution through the table; the result
// contains no alias nodes and dealias is idempotent.
// Throws AliasCycleError / UnknownTypeNameError.
TypePtr dealias(const TypePtr& t, const AliasTable& aliases);
TypePtr dealias(const std::string& name, const AliasTable& aliases);

// Rewrite a type into canonical expanded form: bare struct/union/enum
// references whose tag is defined in `udts` are inlined, except references
// to a tag already being expanded on the current path (recursive types),
// which stay bare. Unknown tags stay bare (opaque).
TypePtr expand_refs(const TypePtr& t, const std::map<std::string, TypePtr>& udts);

// Every struct/union definition reachable from t, in first-encounter
// pre-order; each UDT appears once (tagged UDTs deduplicated by tag,
// anonymous ones by node identity).
std::vector<TypePtr> udt_closure(const TypePtr& t);
std::vector<TypePtr> udt_closure(const std::vector<TypePtr>& roots);

// True when a struct or union occurs anywhere in the type tree
// (pointer-to-struct counts).
bool has_udt(const TypePtr& t);

}  // namespace dct
