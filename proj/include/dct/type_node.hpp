#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dct/errors.hpp"

namespace dct {

enum class TypeKind {
    Primitive,
    Pointer,
    Array,
    Function,
    Struct,
    Union,
    Enum,
    Alias,
};

class TypeNode;
using TypePtr = std::shared_ptr<const TypeNode>;

struct Field {
    std::string name;  // empty for anonymous members
    TypePtr type;
    std::optional<int> bit_width;  // bitfield width, part of the field's type
};

struct Enumerator {
    std::string name;
    std::optional<long long> value;  // explicit "= value" if present
};

// Immutable node of a C type tree. Struct/union/enum nodes either carry a
// definition (defined == true) or are a bare tag reference. In the canonical
// "expanded" form produced by the front end, a bare reference is either a
// back-reference to an ancestor definition on the same tree path (recursive
// type) or an opaque type with no definition in the unit.
class TypeNode {
public:
    TypeKind kind;

    std::string primitive_name;             // Primitive: canonical keyword ("unsigned long")
    TypePtr element;                        // Pointer: pointee; Array: element
    std::optional<std::uint64_t> length;    // Array; nullopt = unsized / flexible member
    TypePtr return_type;                    // Function
    std::vector<TypePtr> params;            // Function
    bool variadic = false;                  // Function
    std::string tag;                        // Struct/Union/Enum; empty = anonymous
    bool defined = false;                   // Struct/Union/Enum carries a body
    std::vector<Field> fields;              // Struct/Union when defined
    std::vector<Enumerator> enumerators;    // Enum when defined
    std::string alias_name;                 // Alias: typedef name to resolve

    bool is_udt() const { return kind == TypeKind::Struct || kind == TypeKind::Union; }
    bool is_tagged() const {
        return kind == TypeKind::Struct || kind == TypeKind::Union || kind == TypeKind::Enum;
    }

    static TypePtr primitive(std::string name);
    static TypePtr pointer(TypePtr pointee);
    static TypePtr array_of(TypePtr element, std::optional<std::uint64_t> length);
    static TypePtr function(TypePtr ret, std::vector<TypePtr> params, bool variadic = false);
    static TypePtr struct_type(std::string tag, std::vector<Field> fields);
    static TypePtr union_type(std::string tag, std::vector<Field> fields);
    static TypePtr struct_ref(std::string tag);
    static TypePtr union_ref(std::string tag);
    static TypePtr enum_type(std::string tag, std::vector<Enumerator> enumerators);
    static TypePtr enum_ref(std::string tag);
    static TypePtr alias(std::string name);
};

// Typedef table. Targets may themselves contain alias nodes (chains).
class AliasTable {
public:
    void define(const std::string& name, TypePtr target);
    bool contains(const std::string& name) const;
    const TypePtr& target(const std::string& name) const;  // throws UnknownTypeNameError
    const std::map<std::string, TypePtr>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::string, TypePtr> entries_;
};

}  // namespace dct
