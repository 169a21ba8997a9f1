#include "dct/type_json.hpp"

namespace dct {

using nlohmann::json;

json type_to_json(const TypePtr& t) {
    const TypeNode& n = *t;
    json j;
    switch (n.kind) {
        case TypeKind::Primitive:
            j["kind"] = "primitive";
            j["name"] = n.primitive_name;
            break;
        case TypeKind::Pointer:
            j["kind"] = "pointer";
            j["element"] = type_to_json(n.element);
            break;
        case TypeKind::Array:
            j["kind"] = "array";
            j["element"] = type_to_json(n.element);
            if (n.length) j["length"] = *n.length;
            break;
        case TypeKind::Function: {
            j["kind"] = "function";
            j["return"] = type_to_json(n.return_type);
            json ps = json::array();
            for (const auto& p : n.params) ps.push_back(type_to_json(p));
            j["params"] = std::move(ps);
            if (n.variadic) j["variadic"] = true;
            break;
        }
        case TypeKind::Struct:
        case TypeKind::Union: {
            j["kind"] = n.kind == TypeKind::Struct ? "struct" : "union";
            if (!n.tag.empty()) j["tag"] = n.tag;
            if (n.defined) {
                json fs = json::array();
                for (const auto& f : n.fields) {
                    json fj;
                    fj["name"] = f.name;
                    fj["type"] = type_to_json(f.type);
                    if (f.bit_width) fj["bits"] = *f.bit_width;
                    fs.push_back(std::move(fj));
                }
                j["fields"] = std::move(fs);
            }
            break;
        }
        case TypeKind::Enum: {
            j["kind"] = "enum";
            if (!n.tag.empty()) j["tag"] = n.tag;
            if (n.defined) {
                json es = json::array();
                for (const auto& e : n.enumerators) {
                    json ej;
                    ej["name"] = e.name;
                    if (e.value) ej["value"] = *e.value;
                    es.push_back(std::move(ej));
                }
                j["enumerators"] = std::move(es);
            }
            break;
        }
        case TypeKind::Alias:
            j["kind"] = "alias";
            j["name"] = n.alias_name;
            break;
    }
    return j;
}

TypePtr type_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "primitive") return TypeNode::primitive(j.at("name").get<std::string>());
    if (kind == "pointer") return TypeNode::pointer(type_from_json(j.at("element")));
    if (kind == "array") {
        std::optional<std::uint64_t> len;
        if (j.contains("length")) len = j.at("length").get<std::uint64_t>();
        return TypeNode::array_of(type_from_json(j.at("element")), len);
    }
    if (kind == "function") {
        std::vector<TypePtr> params;
        for (const auto& p : j.at("params")) params.push_back(type_from_json(p));
        bool variadic = j.value("variadic", false);
        return TypeNode::function(type_from_json(j.at("return")), std::move(params), variadic);
    }
    if (kind == "struct" || kind == "union") {
        std::string tag = j.value("tag", std::string());
        if (!j.contains("fields")) {
            return kind == "struct" ? TypeNode::struct_ref(tag) : TypeNode::union_ref(tag);
        }
        std::vector<Field> fields;
        for (const auto& fj : j.at("fields")) {
            Field f;
            f.name = fj.at("name").get<std::string>();
            f.type = type_from_json(fj.at("type"));
            if (fj.contains("bits")) f.bit_width = fj.at("bits").get<int>();
            fields.push_back(std::move(f));
        }
        return kind == "struct" ? TypeNode::struct_type(tag, std::move(fields))
                                : TypeNode::union_type(tag, std::move(fields));
    }
    if (kind == "enum") {
        std::string tag = j.value("tag", std::string());
        if (!j.contains("enumerators")) return TypeNode::enum_ref(tag);
        std::vector<Enumerator> es;
        for (const auto& ej : j.at("enumerators")) {
            Enumerator e;
            e.name = ej.at("name").get<std::string>();
            if (ej.contains("value")) e.value = ej.at("value").get<long long>();
            es.push_back(std::move(e));
        }
        return TypeNode::enum_type(tag, std::move(es));
    }
    if (kind == "alias") return TypeNode::alias(j.at("name").get<std::string>());
    throw Error("unknown type kind in JSON: " + kind);
}

}  // namespace dct
