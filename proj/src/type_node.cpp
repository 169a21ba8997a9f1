#include "dct/type_node.hpp"

namespace dct {

namespace {
std::shared_ptr<TypeNode> make(TypeKind kind) {
    auto node = std::make_shared<TypeNode>();
    node->kind = kind;
    return node;
}
}  // namespace

TypePtr TypeNode::primitive(std::string name) {
    auto node = make(TypeKind::Primitive);
    node->primitive_name = std::move(name);
    return node;
}

TypePtr TypeNode::pointer(TypePtr pointee) {
    auto node = make(TypeKind::Pointer);
    node->element = std::move(pointee);
    return node;
}

TypePtr TypeNode::array_of(TypePtr element, std::optional<std::uint64_t> length) {
    auto node = make(TypeKind::Array);
    node->element = std::move(element);
    node->length = length;
    return node;
}

TypePtr TypeNode::function(TypePtr ret, std::vector<TypePtr> params, bool variadic) {
    auto node = make(TypeKind::Function);
    node->return_type = std::move(ret);
    node->params = std::move(params);
    node->variadic = variadic;
    return node;
}

TypePtr TypeNode::struct_type(std::string tag, std::vector<Field> fields) {
    auto node = make(TypeKind::Struct);
    node->tag = std::move(tag);
    node->fields = std::move(fields);
    node->defined = true;
    return node;
}

TypePtr TypeNode::union_type(std::string tag, std::vector<Field> fields) {
    auto node = make(TypeKind::Union);
    node->tag = std::move(tag);
    node->fields = std::move(fields);
    node->defined = true;
    return node;
}

TypePtr TypeNode::struct_ref(std::string tag) {
    auto node = make(TypeKind::Struct);
    node->tag = std::move(tag);
    return node;
}

TypePtr TypeNode::union_ref(std::string tag) {
    auto node = make(TypeKind::Union);
    node->tag = std::move(tag);
    return node;
}

TypePtr TypeNode::enum_type(std::string tag, std::vector<Enumerator> enumerators) {
    auto node = make(TypeKind::Enum);
    node->tag = std::move(tag);
    node->enumerators = std::move(enumerators);
    node->defined = true;
    return node;
}

TypePtr TypeNode::enum_ref(std::string tag) {
    auto node = make(TypeKind::Enum);
    node->tag = std::move(tag);
    return node;
}

TypePtr TypeNode::alias(std::string name) {
    auto node = make(TypeKind::Alias);
    node->alias_name = std::move(name);
    return node;
}

void AliasTable::define(const std::string& name, TypePtr target) {
    entries_[name] = std::move(target);
}

bool AliasTable::contains(const std::string& name) const {
    return entries_.count(name) != 0;
}

const TypePtr& AliasTable::target(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw UnknownTypeNameError(name);
    return it->second;
}

}  // namespace dct
